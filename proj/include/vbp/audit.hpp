#ifndef VBP_AUDIT_HPP
#define VBP_AUDIT_HPP

#include <cstdint>

#include "vbp/io.hpp"
#include "vbp/profile.hpp"

namespace vbp::audit {

inline constexpr int kExitClean = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitConditionViolation = 3;
inline constexpr int kExitOracleViolation = 4;
inline constexpr int kExitInternalFailure = 5;

struct Options {
    std::uint64_t seed = 0;
    int grid = 100;
    double tolerance = kDecisionTol;
    std::size_t samples = 1000;
};

struct Result {
    io::json report;
    int exit_code = kExitClean;
};

/// Validation-only report (the `validate` subcommand).
Result run_validation(const Profile& profile);

/// Full pipeline: decomposition -> diversity -> aggregation condition ->
/// corollary/proposition checks -> witness construction -> sampled audits.
/// Deterministic given (profile, options): byte-identical reports.
Result run_audit(const Profile& profile, const Options& options);

/// Dominance report for one preference (0 = social) and a pair of acts.
io::json dominance_report(const Profile& profile, std::size_t preference_index,
                          const std::string& f_name, const Act& f,
                          const std::string& g_name, const Act& g,
                          double tolerance = kDecisionTol);

} // namespace vbp::audit

#endif
