#ifndef VBP_PROFILE_HPP
#define VBP_PROFILE_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbp/lp.hpp"

namespace vbp {

inline constexpr double kFeasTol = 1e-9;
inline constexpr double kDecisionTol = 1e-7;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A probability distribution over the finite state space. Weights within
/// kFeasTol of zero are clamped to zero; worse violations are rejected.
class Prior {
public:
    Prior() = default; // empty placeholder, filled in by the producing check
    explicit Prior(std::vector<double> weights);

    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t s) const { return weights_[s]; }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> weights_;
};

struct HalfSpace {
    std::vector<double> normal; // one coefficient per state
    double bound = 0.0;         // normal . p <= bound
};

/// Finitely many half-spaces, always interpreted as intersected with the
/// probability simplex. An empty row list is the full simplex.
class Polyhedron {
public:
    Polyhedron() = default;
    explicit Polyhedron(std::vector<HalfSpace> rows) : rows_(std::move(rows)) {}

    const std::vector<HalfSpace>& rows() const { return rows_; }
    void add_row(HalfSpace h) { rows_.push_back(std::move(h)); }

    /// Max violation of any row at p (<= 0 means p is inside, up to slack).
    double violation(std::span<const double> p) const;
    bool contains(std::span<const double> p, double slack = kFeasTol) const {
        return violation(p) <= slack;
    }

    /// A point of the polyhedron intersected with the simplex, found by one
    /// feasibility LP; nullopt when the intersection is empty.
    std::optional<Prior> feasible_point(std::size_t states) const;

private:
    std::vector<HalfSpace> rows_;
};

/// Polyhedral convex perception function: c(p) = max_k (g_k . p + h_k) on
/// domain /\ simplex, +inf outside. No pieces means c == 0 on the domain
/// (the Bewley indicator case).
class PerceptionFunction {
public:
    struct Piece {
        std::vector<double> gradient;
        double offset = 0.0;
    };

    PerceptionFunction() = default;
    PerceptionFunction(std::vector<Piece> pieces, Polyhedron domain)
        : pieces_(std::move(pieces)), domain_(std::move(domain)) {}

    const std::vector<Piece>& pieces() const { return pieces_; }
    const Polyhedron& domain() const { return domain_; }
    bool is_bewley() const { return pieces_.empty(); }

    /// +inf iff p violates a domain row by more than kFeasTol.
    double evaluate(const Prior& p) const;

    /// {p in domain /\ simplex : c(p) <= 0}; nonempty for validated c.
    Polyhedron zero_set() const;

    /// Minimum of c over domain /\ simplex, by one LP (epigraph variable is
    /// free below so a negative minimum is detected). Nullopt when the
    /// domain misses the simplex entirely.
    std::optional<double> simplex_minimum(std::size_t states) const;

private:
    std::vector<Piece> pieces_;
    Polyhedron domain_;
};

class AffineUtility {
public:
    AffineUtility() = default;
    AffineUtility(std::vector<double> gradient, double intercept)
        : gradient_(std::move(gradient)), intercept_(intercept) {}

    const std::vector<double>& gradient() const { return gradient_; }
    double intercept() const { return intercept_; }

    double operator()(std::span<const double> outcome) const {
        double v = intercept_;
        for (std::size_t k = 0; k < gradient_.size(); ++k) v += gradient_[k] * outcome[k];
        return v;
    }

private:
    std::vector<double> gradient_;
    double intercept_ = 0.0;
};

/// A state-contingent outcome: one vector in R^m per state.
class Act {
public:
    Act() = default;
    explicit Act(std::vector<std::vector<double>> outcomes) : outcomes_(std::move(outcomes)) {}

    std::size_t states() const { return outcomes_.size(); }
    const std::vector<double>& outcome(std::size_t s) const { return outcomes_[s]; }
    const std::vector<std::vector<double>>& outcomes() const { return outcomes_; }

    /// Utility value per state under u.
    std::vector<double> values(const AffineUtility& u) const;

private:
    std::vector<std::vector<double>> outcomes_;
};

struct NamedAct {
    std::string name;
    Act act;
};

struct Preference {
    AffineUtility utility;
    PerceptionFunction perception;
};

struct Profile {
    std::vector<std::string> states;
    std::size_t outcome_dim = 0;
    std::vector<Preference> agents; // individuals 1..n (index 0 here = agent 1)
    Preference social;              // the planner, index 0 in reports
    std::vector<NamedAct> acts;     // optional bundled acts

    std::size_t num_states() const { return states.size(); }
    std::size_t num_agents() const { return agents.size(); }

    /// Preference by report index: 0 = social, k >= 1 = individual k.
    const Preference& preference(std::size_t index) const {
        return index == 0 ? social : agents.at(index - 1);
    }
};

struct ValidationIssue {
    std::size_t agent; // 0 = social, k >= 1 = individual k; npos for profile-level
    std::string invariant;
    std::string message;

    static constexpr std::size_t kProfileLevel = static_cast<std::size_t>(-1);
};

/// Checks every representation side condition: n >= 2, dimensions, nonzero
/// utility gradients, nonempty effective domains, and min c = 0 per agent.
std::vector<ValidationIssue> validate_profile(const Profile& profile);

} // namespace vbp

#endif
