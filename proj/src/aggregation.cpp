#include "vbp/aggregation.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace vbp {
namespace {

Eigen::MatrixXd gradient_matrix(const Profile& profile) {
    const std::size_t m = profile.outcome_dim;
    const std::size_t n = profile.num_agents();
    Eigen::MatrixXd g(m, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < m; ++k) g(k, i) = profile.agents[i].utility.gradient()[k];
    return g;
}

// Some nonnegative solution of G a = g0, by one LP minimizing sum(a).
std::optional<std::vector<double>> nonnegative_solution(const Eigen::MatrixXd& g,
                                                        const Eigen::VectorXd& g0) {
    lp::LinearProgram prog;
    prog.objective.assign(g.cols(), 1.0);
    for (Eigen::Index k = 0; k < g.rows(); ++k) {
        std::vector<double> row(g.cols());
        for (Eigen::Index i = 0; i < g.cols(); ++i) row[i] = g(k, i);
        prog.add_row(std::move(row), lp::Relation::Eq, g0(k));
    }
    const lp::LpOutcome out = lp::solve(prog);
    if (out.status != lp::LpStatus::Optimal) return std::nullopt;
    return out.primal;
}

} // namespace

DecompositionResult decompose_utility(const Profile& profile) {
    const Eigen::MatrixXd g = gradient_matrix(profile);
    Eigen::VectorXd g0(profile.outcome_dim);
    for (std::size_t k = 0; k < profile.outcome_dim; ++k)
        g0(k) = profile.social.utility.gradient()[k];

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(g);
    cod.setThreshold(1e-9);
    const Eigen::VectorXd alpha = cod.solve(g0);
    const double residual = (g * alpha - g0).norm();
    const double scale = std::max(1.0, g0.norm());
    if (residual > 1e-8 * scale)
        return NoDecomposition{"inconsistent system", std::nullopt};

    const bool unique = static_cast<std::size_t>(cod.rank()) == profile.num_agents();
    std::vector<double> weights(alpha.data(), alpha.data() + alpha.size());

    if (!unique) {
        // Dependent gradients: prefer a nonnegative solution when one exists.
        bool has_negative = false;
        for (double w : weights)
            if (w < -kFeasTol) has_negative = true;
        if (has_negative) {
            auto nn = nonnegative_solution(g, g0);
            if (!nn) return NoDecomposition{"negative weight", std::nullopt};
            weights = std::move(*nn);
        }
    }

    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] < -kFeasTol) return NoDecomposition{"negative weight", i + 1};
        if (weights[i] < 0.0) weights[i] = 0.0;
    }

    bool all_zero = true;
    for (double w : weights)
        if (w > kWeightTol) all_zero = false;
    if (all_zero) return NoDecomposition{"inconsistent system", std::nullopt}; // u0 would be constant

    double beta = profile.social.utility.intercept();
    for (std::size_t i = 0; i < weights.size(); ++i)
        beta -= weights[i] * profile.agents[i].utility.intercept();

    return UtilitarianDecomposition{std::move(weights), beta, residual, unique};
}

DiversityReport diversity_check(const Profile& profile) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(gradient_matrix(profile));
    qr.setThreshold(1e-9);
    const auto rank = static_cast<std::size_t>(qr.rank());
    return DiversityReport{rank, rank == profile.num_agents()};
}

namespace {

// Feasible set {p in simplex, p in dom c_i, p in dom c0}, objective filled by caller.
lp::LinearProgram condition_base(std::size_t states, const Polyhedron& dom_i,
                                 const Polyhedron& dom0) {
    lp::LinearProgram prog;
    prog.objective.assign(states, 0.0);
    prog.lower.assign(states, 0.0);
    prog.free_var.assign(states, false);
    prog.add_row(std::vector<double>(states, 1.0), lp::Relation::Eq, 1.0);
    for (const HalfSpace& h : dom_i.rows()) prog.add_row(h.normal, lp::Relation::LessEq, h.bound);
    for (const HalfSpace& h : dom0.rows()) prog.add_row(h.normal, lp::Relation::LessEq, h.bound);
    return prog;
}

} // namespace

std::optional<ConditionViolation> check_theorem1_condition(const Profile& profile,
                                                           const UtilitarianDecomposition& decomp,
                                                           double tol) {
    const std::size_t states = profile.num_states();
    const PerceptionFunction& c0 = profile.social.perception;

    for (std::size_t i = 0; i < profile.num_agents(); ++i) {
        const double alpha = decomp.weights[i];
        if (alpha <= kWeightTol) continue; // 0 * (+inf) = 0: ignored agents are exempt
        const PerceptionFunction& ci = profile.agents[i].perception;

        // (a) finite pieces: maximize alpha*(g_k.p + h_k) - c0(p) over the common domain.
        for (std::size_t k = 0; k < ci.pieces().size(); ++k) {
            const auto& piece = ci.pieces()[k];
            lp::LinearProgram prog = condition_base(states, ci.domain(), c0.domain());
            for (std::size_t s = 0; s < states; ++s) prog.objective[s] = -alpha * piece.gradient[s];
            if (!c0.pieces().empty()) {
                const std::size_t t = prog.add_variable(1.0, /*is_free=*/true);
                for (auto& r : prog.rows) r.coeffs.resize(prog.num_vars(), 0.0);
                for (const auto& p0 : c0.pieces()) {
                    std::vector<double> row(prog.num_vars(), 0.0);
                    for (std::size_t s = 0; s < states; ++s) row[s] = p0.gradient[s];
                    row[t] = -1.0;
                    prog.add_row(std::move(row), lp::Relation::LessEq, -p0.offset);
                }
            }
            const lp::LpOutcome out = lp::solve(prog);
            if (out.status != lp::LpStatus::Optimal) continue; // empty common domain: nothing to violate
            const double optimum = -(out.value) + alpha * piece.offset;
            if (optimum > tol) {
                Prior at(std::vector<double>(out.primal.begin(), out.primal.begin() + states));
                const double gap = alpha * ci.evaluate(at) - c0.evaluate(at);
                double piece_gap = alpha * piece.offset - c0.evaluate(at);
                for (std::size_t s = 0; s < states; ++s) piece_gap += alpha * piece.gradient[s] * at[s];
                return FiniteGapViolation{std::move(at), i + 1, k, gap, piece_gap};
            }
        }

        // (b) domain facets: a point of dom c0 outside dom c_i makes the gap infinite.
        for (const HalfSpace& facet : ci.domain().rows()) {
            lp::LinearProgram prog = condition_base(states, Polyhedron{}, c0.domain());
            for (std::size_t s = 0; s < states; ++s) prog.objective[s] = -facet.normal[s];
            const lp::LpOutcome out = lp::solve(prog);
            if (out.status != lp::LpStatus::Optimal)
                throw lp::NumericalFailure("facet sweep LP failed on a validated profile");
            const double slack = -out.value - facet.bound;
            if (slack > tol) {
                Prior at(std::vector<double>(out.primal.begin(), out.primal.begin() + states));
                return InfiniteGapViolation{std::move(at), i + 1, facet, slack};
            }
        }
    }
    return std::nullopt;
}

ContainmentResult polytope_contained(const Polyhedron& p, const Polyhedron& q,
                                     std::size_t states, double tol) {
    for (std::size_t r = 0; r < q.rows().size(); ++r) {
        const HalfSpace& row = q.rows()[r];
        lp::LinearProgram prog;
        prog.objective.resize(states);
        for (std::size_t s = 0; s < states; ++s) prog.objective[s] = -row.normal[s];
        prog.add_row(std::vector<double>(states, 1.0), lp::Relation::Eq, 1.0);
        for (const HalfSpace& h : p.rows()) prog.add_row(h.normal, lp::Relation::LessEq, h.bound);
        const lp::LpOutcome out = lp::solve(prog);
        if (out.status != lp::LpStatus::Optimal)
            return ContainmentResult{true, std::nullopt, std::nullopt}; // empty P: contained vacuously
        if (-out.value > row.bound + tol)
            return ContainmentResult{false, Prior(out.primal), r};
    }
    return ContainmentResult{true, std::nullopt, std::nullopt};
}

Corollary1Report check_corollary1(const Profile& profile, const UtilitarianDecomposition& decomp) {
    const std::size_t states = profile.num_states();
    Corollary1Report report;
    const Polyhedron z0 = profile.social.perception.zero_set();
    for (std::size_t i = 0; i < profile.num_agents(); ++i) {
        if (decomp.weights[i] <= kWeightTol) continue;
        const auto contained = polytope_contained(z0, profile.agents[i].perception.zero_set(), states);
        if (!contained.contained) {
            report.holds = false;
            report.failing_agents.push_back(i + 1);
        }
    }

    Polyhedron common;
    for (const Preference& agent : profile.agents) {
        const Polyhedron zi = agent.perception.zero_set();
        for (const HalfSpace& h : zi.rows()) common.add_row(h);
    }
    if (!common.feasible_point(states)) {
        report.common_zero_empty = true;
        for (std::size_t i = 0; i < profile.num_agents(); ++i)
            if (decomp.weights[i] <= kWeightTol) report.must_be_ignored.push_back(i + 1);
    }
    return report;
}

bool check_prop1(const Profile& profile, const UtilitarianDecomposition& decomp) {
    if (!profile.social.perception.is_bewley())
        throw NotBewleySocial("social preference is not a Bewley preference");
    const std::size_t states = profile.num_states();
    const Polyhedron& p0 = profile.social.perception.domain();
    for (std::size_t i = 0; i < profile.num_agents(); ++i) {
        if (decomp.weights[i] <= kWeightTol) continue;
        if (!polytope_contained(p0, profile.agents[i].perception.zero_set(), states).contained)
            return false;
    }
    return true;
}

bool check_prop2(const Profile& profile, const UtilitarianDecomposition& decomp) {
    for (const Preference& agent : profile.agents)
        if (!agent.perception.is_bewley())
            throw NotBewleyAgents("some individual is not a Bewley preference");
    const std::size_t states = profile.num_states();
    const Polyhedron& dom0 = profile.social.perception.domain();
    for (std::size_t i = 0; i < profile.num_agents(); ++i) {
        if (decomp.weights[i] <= kWeightTol) continue;
        if (!polytope_contained(dom0, profile.agents[i].perception.domain(), states).contained)
            return false;
    }
    return true;
}

bool check_prop3_liberalism(const Profile& profile, const UtilitarianDecomposition& decomp) {
    return !check_theorem1_condition(profile, decomp).has_value();
}

} // namespace vbp
