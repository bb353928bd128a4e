#ifndef VBP_TEST_HELPERS_HPP
#define VBP_TEST_HELPERS_HPP

#include <string>
#include <vector>

#include "vbp/io.hpp"
#include "vbp/profile.hpp"

namespace vbp::test {

inline std::string fixture(const std::string& name) {
    return std::string(VBP_FIXTURE_DIR) + "/" + name;
}

inline Profile load_fixture(const std::string& name) {
    return io::load_profile(fixture(name));
}

// c(p) = 2 p_1 over a two-state simplex, the running single-piece example.
inline PerceptionFunction two_p1() {
    return PerceptionFunction({{{0.0, 2.0}, 0.0}}, Polyhedron{});
}

// Piece-free Bewley indicator of {p : p_1 <= bound}.
inline PerceptionFunction bewley_cap(double bound) {
    return PerceptionFunction({}, Polyhedron({{{0.0, 1.0}, bound}}));
}

inline Act constant_act(std::vector<double> outcome, std::size_t states) {
    return Act(std::vector<std::vector<double>>(states, std::move(outcome)));
}

} // namespace vbp::test

#endif
