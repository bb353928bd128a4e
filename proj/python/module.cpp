#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vbp/audit.hpp"
#include "vbp/io.hpp"
#include "vbp/oracle.hpp"
#include "vbp/preference.hpp"

namespace py = pybind11;

namespace {

vbp::Profile profile_from_json(const std::string& text) {
    return vbp::io::parse_profile_text(text);
}

vbp::Act act_from_outcomes(const std::vector<std::vector<double>>& outcomes) {
    return vbp::Act(outcomes);
}

py::dict validate(const std::string& profile_json) {
    const auto result = vbp::audit::run_validation(profile_from_json(profile_json));
    py::dict out;
    out["report"] = result.report.dump(2);
    out["exit_code"] = result.exit_code;
    return out;
}

py::dict audit(const std::string& profile_json, std::uint64_t seed, int grid, double tolerance,
               std::size_t samples) {
    vbp::audit::Options options;
    options.seed = seed;
    options.grid = grid;
    options.tolerance = tolerance;
    options.samples = samples;
    const auto result = vbp::audit::run_audit(profile_from_json(profile_json), options);
    py::dict out;
    out["report"] = result.report.dump(2);
    out["exit_code"] = result.exit_code;
    return out;
}

py::dict dominance(const std::string& profile_json, std::size_t preference_index,
                   const std::vector<std::vector<double>>& f_outcomes,
                   const std::vector<std::vector<double>>& g_outcomes, double tolerance) {
    const vbp::Profile profile = profile_from_json(profile_json);
    const vbp::Preference& pref = profile.preference(preference_index);
    const auto cert = vbp::dominance(pref.utility, pref.perception, act_from_outcomes(f_outcomes),
                                     act_from_outcomes(g_outcomes), tolerance);
    py::dict out;
    out["margin"] = cert.margin;
    out["holds"] = cert.holds;
    out["argmin_prior"] = cert.argmin.weights();
    return out;
}

std::string relation(const std::string& profile_json, std::size_t preference_index,
                     const std::vector<std::vector<double>>& f_outcomes,
                     const std::vector<std::vector<double>>& g_outcomes, double tolerance) {
    const vbp::Profile profile = profile_from_json(profile_json);
    const vbp::Preference& pref = profile.preference(preference_index);
    return vbp::to_string(vbp::relation(pref.utility, pref.perception, act_from_outcomes(f_outcomes),
                                        act_from_outcomes(g_outcomes), tolerance));
}

std::vector<std::vector<double>> mixture(const std::vector<std::vector<double>>& f_outcomes,
                                         const std::vector<std::vector<double>>& g_outcomes,
                                         double weight) {
    return vbp::mixture(act_from_outcomes(f_outcomes), act_from_outcomes(g_outcomes), weight)
        .outcomes();
}

std::optional<double> grid_dominance(const std::string& profile_json, std::size_t preference_index,
                                     const std::vector<std::vector<double>>& f_outcomes,
                                     const std::vector<std::vector<double>>& g_outcomes,
                                     int resolution) {
    const vbp::Profile profile = profile_from_json(profile_json);
    const vbp::Preference& pref = profile.preference(preference_index);
    return vbp::oracle::grid_dominance(pref.utility, pref.perception, act_from_outcomes(f_outcomes),
                                       act_from_outcomes(g_outcomes), resolution);
}

} // namespace

PYBIND11_MODULE(pyvbp, m) {
    m.doc() = "Variational Bewley preference profiles: dominance, aggregation audits, Pareto witnesses";

    m.def("validate", &validate, py::arg("profile_json"),
          "Run all representation side-condition checks; returns {report, exit_code}.");
    m.def("audit", &audit, py::arg("profile_json"), py::arg("seed") = 0, py::arg("grid") = 100,
          py::arg("tolerance") = vbp::kDecisionTol, py::arg("samples") = 1000,
          "Full aggregation audit; returns {report, exit_code}. Deterministic per seed.");
    m.def("dominance", &dominance, py::arg("profile_json"), py::arg("preference"), py::arg("f"),
          py::arg("g"), py::arg("tolerance") = vbp::kDecisionTol,
          "LP dominance certificate for f vs g under one preference (0 = social).");
    m.def("relation", &relation, py::arg("profile_json"), py::arg("preference"), py::arg("f"),
          py::arg("g"), py::arg("tolerance") = vbp::kDecisionTol);
    m.def("mixture", &mixture, py::arg("f"), py::arg("g"), py::arg("weight"),
          "Statewise convex combination of two acts.");
    m.def("grid_dominance", &grid_dominance, py::arg("profile_json"), py::arg("preference"),
          py::arg("f"), py::arg("g"), py::arg("resolution") = 200,
          "Brute-force grid dominance margin (None when the grid misses the domain).");
}
