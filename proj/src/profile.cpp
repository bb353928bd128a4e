#include "vbp/profile.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace vbp {

Prior::Prior(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("prior over empty state space");
    double sum = 0.0;
    for (double& w : weights_) {
        if (!std::isfinite(w)) throw std::invalid_argument("non-finite prior weight");
        if (w < -kFeasTol) throw std::invalid_argument("negative prior weight");
        if (w < 0.0) w = 0.0;
        sum += w;
    }
    if (std::abs(sum - 1.0) > kFeasTol * weights_.size() * 10.0)
        throw std::invalid_argument("prior weights do not sum to 1");
}

double Polyhedron::violation(std::span<const double> p) const {
    double worst = -kInf;
    for (const HalfSpace& h : rows_) {
        double v = -h.bound;
        for (std::size_t s = 0; s < p.size(); ++s) v += h.normal[s] * p[s];
        worst = std::max(worst, v);
    }
    return rows_.empty() ? 0.0 : worst;
}

namespace {

// Shared skeleton: variables p(0..S-1) >= 0, sum p = 1, plus polyhedron rows.
lp::LinearProgram simplex_base(std::size_t states, const Polyhedron& poly) {
    lp::LinearProgram prog;
    prog.objective.assign(states, 0.0);
    prog.lower.assign(states, 0.0);
    prog.free_var.assign(states, false);
    prog.add_row(std::vector<double>(states, 1.0), lp::Relation::Eq, 1.0);
    for (const HalfSpace& h : poly.rows()) prog.add_row(h.normal, lp::Relation::LessEq, h.bound);
    return prog;
}

} // namespace

std::optional<Prior> Polyhedron::feasible_point(std::size_t states) const {
    lp::LinearProgram prog = simplex_base(states, *this);
    const lp::LpOutcome out = lp::solve(prog);
    if (out.status != lp::LpStatus::Optimal) return std::nullopt;
    return Prior(std::vector<double>(out.primal.begin(), out.primal.begin() + states));
}

double PerceptionFunction::evaluate(const Prior& p) const {
    if (domain_.violation(p.weights()) > kFeasTol) return kInf;
    if (pieces_.empty()) return 0.0; // indicator of the domain
    double value = -kInf;
    for (const Piece& piece : pieces_) {
        double v = piece.offset;
        for (std::size_t s = 0; s < p.size(); ++s) v += piece.gradient[s] * p[s];
        value = std::max(value, v);
    }
    return value;
}

Polyhedron PerceptionFunction::zero_set() const {
    Polyhedron z = domain_;
    for (const Piece& piece : pieces_) z.add_row(HalfSpace{piece.gradient, -piece.offset});
    return z;
}

std::optional<double> PerceptionFunction::simplex_minimum(std::size_t states) const {
    if (pieces_.empty()) {
        if (!domain_.feasible_point(states)) return std::nullopt;
        return 0.0;
    }
    lp::LinearProgram prog = simplex_base(states, domain_);
    const std::size_t t = prog.add_variable(1.0, /*is_free=*/true);
    for (const Piece& piece : pieces_) {
        std::vector<double> row(prog.num_vars(), 0.0);
        for (std::size_t s = 0; s < states; ++s) row[s] = piece.gradient[s];
        row[t] = -1.0; // g.p - t <= -h  <=>  t >= g.p + h
        prog.add_row(std::move(row), lp::Relation::LessEq, -piece.offset);
    }
    // Width the simplex row and domain rows to include t.
    for (auto& r : prog.rows)
        if (r.coeffs.size() < prog.num_vars()) r.coeffs.resize(prog.num_vars(), 0.0);
    const lp::LpOutcome out = lp::solve(prog);
    if (out.status != lp::LpStatus::Optimal) return std::nullopt;
    return out.value;
}

std::vector<double> Act::values(const AffineUtility& u) const {
    std::vector<double> v(outcomes_.size());
    for (std::size_t s = 0; s < outcomes_.size(); ++s) v[s] = u(outcomes_[s]);
    return v;
}

namespace {

bool gradient_is_zero(const AffineUtility& u) {
    for (double g : u.gradient())
        if (std::abs(g) > kFeasTol) return false;
    return true;
}

void check_preference(const Profile& profile, const Preference& pref, std::size_t agent,
                      std::vector<ValidationIssue>& issues) {
    const std::size_t states = profile.num_states();
    std::ostringstream who;
    who << "agent " << agent;

    if (pref.utility.gradient().size() != profile.outcome_dim) {
        issues.push_back({agent, "utility-dimension",
                          "utility gradient width does not match outcome_dim for " + who.str()});
        return;
    }
    if (gradient_is_zero(pref.utility))
        issues.push_back({agent, "nonconstant-utility", "gradient != 0 violated for " + who.str()});

    for (const auto& piece : pref.perception.pieces())
        if (piece.gradient.size() != states) {
            issues.push_back({agent, "piece-dimension",
                              "perception piece width does not match state count for " + who.str()});
            return;
        }
    for (const auto& row : pref.perception.domain().rows())
        if (row.normal.size() != states) {
            issues.push_back({agent, "domain-dimension",
                              "domain row width does not match state count for " + who.str()});
            return;
        }

    const auto min_c = pref.perception.simplex_minimum(states);
    if (!min_c) {
        issues.push_back({agent, "nonempty-domain",
                          "effective domain misses the simplex for " + who.str()});
    } else if (std::abs(*min_c) > kFeasTol * 100.0) {
        std::ostringstream msg;
        msg << "min c = 0 violated (" << who.str() << ", LP minimum " << *min_c << ")";
        issues.push_back({agent, "min-zero", msg.str()});
    }
}

} // namespace

std::vector<ValidationIssue> validate_profile(const Profile& profile) {
    std::vector<ValidationIssue> issues;
    if (profile.num_states() < 2)
        issues.push_back({ValidationIssue::kProfileLevel, "state-count", "at least two states required"});
    if (profile.num_agents() < 2)
        issues.push_back({ValidationIssue::kProfileLevel, "agent-count", "n >= 2 violated"});
    if (profile.outcome_dim == 0)
        issues.push_back({ValidationIssue::kProfileLevel, "outcome-dim", "outcome_dim must be positive"});
    if (!issues.empty()) return issues;

    check_preference(profile, profile.social, 0, issues);
    for (std::size_t i = 0; i < profile.num_agents(); ++i)
        check_preference(profile, profile.agents[i], i + 1, issues);

    for (const NamedAct& named : profile.acts) {
        if (named.act.states() != profile.num_states()) {
            issues.push_back({ValidationIssue::kProfileLevel, "act-states",
                              "act '" + named.name + "' does not cover every state"});
            continue;
        }
        for (std::size_t s = 0; s < named.act.states(); ++s)
            if (named.act.outcome(s).size() != profile.outcome_dim)
                issues.push_back({ValidationIssue::kProfileLevel, "act-dimension",
                                  "act '" + named.name + "' has an outcome of wrong dimension"});
    }
    return issues;
}

} // namespace vbp
