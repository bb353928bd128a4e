#ifndef VBP_AGGREGATION_HPP
#define VBP_AGGREGATION_HPP

#include <optional>
#include <variant>
#include <vector>

#include "vbp/profile.hpp"

namespace vbp {

struct UtilitarianDecomposition {
    std::vector<double> weights; // alpha_i >= 0, one per individual
    double shift = 0.0;          // beta
    double residual = 0.0;       // gradient/intercept reconstruction mismatch
    bool unique = true;          // false when agent gradients are dependent
};

struct NoDecomposition {
    std::string reason; // "inconsistent system" or "negative weight"
    std::optional<std::size_t> agent; // offending individual for negative weight
};

using DecompositionResult = std::variant<UtilitarianDecomposition, NoDecomposition>;

/// Solves u0 = sum alpha_i u_i + beta over the utility gradients/intercepts.
/// With independent gradients alpha is unique; with dependent gradients the
/// minimum-cost nonnegative solution is returned, flagged non-unique.
DecompositionResult decompose_utility(const Profile& profile);

struct DiversityReport {
    std::size_t rank = 0;
    bool independent = false;
};

/// Rank of the individual utility gradients (Preference Diversity holds iff
/// rank = n).
DiversityReport diversity_check(const Profile& profile);

struct FiniteGapViolation {
    Prior at;          // p*
    std::size_t agent; // i* (1-based individual index)
    std::size_t piece; // violating piece of c_{i*}
    double gap;        // alpha_{i*} c_{i*}(p*) - c0(p*) > 0
    double piece_gap;  // alpha_{i*} (g_k.p* + h_k) - c0(p*) > 0
};

struct InfiniteGapViolation {
    Prior at;          // p* in dom c0 but outside dom c_{i*}
    std::size_t agent; // i*
    HalfSpace facet;   // violated facet of dom c_{i*}
    double slack;      // facet.normal . p* - facet.bound > 0
};

using ConditionViolation = std::variant<FiniteGapViolation, InfiniteGapViolation>;

/// The perception-function aggregation condition: c0(p) >= max_i alpha_i
/// c_i(p) for every prior. Checked by one LP per (agent, piece) and one per
/// domain facet; nullopt means Satisfied.
std::optional<ConditionViolation> check_theorem1_condition(
    const Profile& profile, const UtilitarianDecomposition& decomp, double tol = kDecisionTol);

struct ContainmentResult {
    bool contained = true;
    std::optional<Prior> witness; // a point of P outside Q
    std::optional<std::size_t> violated_row;
};

/// P subseteq Q over the simplex, by maximizing each row of Q over P.
ContainmentResult polytope_contained(const Polyhedron& p, const Polyhedron& q,
                                     std::size_t states, double tol = kDecisionTol);

struct Corollary1Report {
    bool holds = true;
    std::vector<std::size_t> failing_agents;   // positive-weight agents whose zero set excludes c0's
    bool common_zero_empty = false;            // intersection over ALL individuals is empty
    std::vector<std::size_t> must_be_ignored;  // nonempty-intersection failure forces some alpha_i = 0
};

Corollary1Report check_corollary1(const Profile& profile, const UtilitarianDecomposition& decomp);

struct NotBewleySocial : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotBewleyAgents : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Bewley-social characterization: P0 contained in every positive-weight
/// individual's zero set.
bool check_prop1(const Profile& profile, const UtilitarianDecomposition& decomp);

/// Bewley-agent characterization: dom c0 contained in every positive-weight
/// individual's prior set.
bool check_prop2(const Profile& profile, const UtilitarianDecomposition& decomp);

/// Liberalism is equivalent to the perception aggregation condition.
bool check_prop3_liberalism(const Profile& profile, const UtilitarianDecomposition& decomp);

/// Weight threshold below which an individual counts as ignored (alpha_i = 0).
inline constexpr double kWeightTol = kFeasTol;

} // namespace vbp

#endif
