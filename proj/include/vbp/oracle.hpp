#ifndef VBP_ORACLE_HPP
#define VBP_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "vbp/preference.hpp"
#include "vbp/profile.hpp"
#include "vbp/witness.hpp"

namespace vbp::oracle {

/// All priors with weights k/resolution (the simplex lattice).
std::vector<Prior> grid_priors(std::size_t states, int resolution);

/// Brute-force dominance margin: min over grid priors inside dom c of the
/// representation objective. Nullopt when no grid point hits the domain
/// (refine the resolution).
std::optional<double> grid_dominance_values(const std::vector<double>& f_values,
                                            const std::vector<double>& g_values,
                                            const PerceptionFunction& c, int resolution);

std::optional<double> grid_dominance(const AffineUtility& u, const PerceptionFunction& c,
                                     const Act& f, const Act& g, int resolution);

struct SampledViolation {
    Act f;
    Act g;
    std::vector<double> agent_margins; // LP-certified, all >= -kDecisionTol
    double social_margin = 0.0;        // LP-certified, < -10*kDecisionTol
    Prior at;                          // social argmin prior
    bool injected = false;             // came from the fixture's bundled acts
};

struct SampleOptions {
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    int resolution = 100;
    double box = 8.0; // per-state utility sample box [-box, box]
};

/// Randomized Standard Pareto audit: samples act pairs in utility space
/// (every fourth pair is a pair of constant acts), keeps unanimously weakly
/// preferred pairs per the grid oracle, and reports pairs with a strict
/// social violation. Every reported violation is LP re-verified first.
/// Deterministic per seed.
std::vector<SampledViolation> sampled_pareto_audit(
    const Profile& profile, const SampleOptions& options,
    const std::vector<std::pair<Act, Act>>& injected_pairs = {});

/// Liberalism audit: same scheme but acts are restricted to each
/// individual's private line F^i.
std::vector<SampledViolation> sampled_liberalism_audit(const Profile& profile,
                                                       const DiversityWitness& dw,
                                                       const SampleOptions& options);

struct IntransitiveTriple {
    std::vector<double> f_values;
    std::vector<double> g_values;
    std::vector<double> h_values;
    double margin_fg = 0.0; // >= 0
    double margin_gh = 0.0; // >= 0
    double margin_fh = 0.0; // < 0
};

/// Searches sampled utility-value triples in [-4,4]^S for f >= g, g >= h,
/// f not >= h. Absence after the sample budget is not a proof.
std::optional<IntransitiveTriple> find_intransitivity(const PerceptionFunction& c,
                                                      std::size_t states, std::size_t samples,
                                                      std::uint64_t seed);

} // namespace vbp::oracle

#endif
