#include "vbp/preference.hpp"

namespace vbp {

std::string to_string(ActRelation r) {
    switch (r) {
        case ActRelation::StrictlyPrefers: return "strictly-prefers";
        case ActRelation::StrictlyDispreferred: return "strictly-dispreferred";
        case ActRelation::Indifferent: return "indifferent";
        case ActRelation::Incomparable: return "incomparable";
    }
    return "?";
}

DominanceCertificate dominance_from_values(const std::vector<double>& f_values,
                                           const std::vector<double>& g_values,
                                           const PerceptionFunction& c, double tol) {
    if (f_values.size() != g_values.size())
        throw DimensionMismatch("acts are defined over different state counts");
    const std::size_t states = f_values.size();

    lp::LinearProgram prog;
    prog.objective.reserve(states + 1);
    for (std::size_t s = 0; s < states; ++s) prog.add_variable(f_values[s] - g_values[s]);
    const std::size_t t = prog.add_variable(1.0); // epigraph of c; c >= 0 on its domain

    std::vector<double> simplex_row(prog.num_vars(), 0.0);
    for (std::size_t s = 0; s < states; ++s) simplex_row[s] = 1.0;
    prog.add_row(std::move(simplex_row), lp::Relation::Eq, 1.0);
    for (const HalfSpace& h : c.domain().rows()) {
        std::vector<double> row(prog.num_vars(), 0.0);
        for (std::size_t s = 0; s < states; ++s) row[s] = h.normal[s];
        prog.add_row(std::move(row), lp::Relation::LessEq, h.bound);
    }
    for (const auto& piece : c.pieces()) {
        std::vector<double> row(prog.num_vars(), 0.0);
        for (std::size_t s = 0; s < states; ++s) row[s] = piece.gradient[s];
        row[t] = -1.0;
        prog.add_row(std::move(row), lp::Relation::LessEq, -piece.offset);
    }

    const lp::LpOutcome out = lp::solve(prog);
    if (out.status != lp::LpStatus::Optimal)
        throw lp::NumericalFailure("dominance LP is not solvable; was the profile validated?");

    DominanceCertificate cert{
        out.value,
        Prior(std::vector<double>(out.primal.begin(), out.primal.begin() + states)),
        out.value >= -tol};
    return cert;
}

DominanceCertificate dominance(const AffineUtility& u, const PerceptionFunction& c,
                               const Act& f, const Act& g, double tol) {
    if (f.states() != g.states())
        throw DimensionMismatch("acts are defined over different state counts");
    for (std::size_t s = 0; s < f.states(); ++s)
        if (f.outcome(s).size() != u.gradient().size() || g.outcome(s).size() != u.gradient().size())
            throw DimensionMismatch("act outcome dimension does not match utility");
    return dominance_from_values(f.values(u), g.values(u), c, tol);
}

ActRelation relation_from_values(const std::vector<double>& f_values,
                                 const std::vector<double>& g_values,
                                 const PerceptionFunction& c, double tol) {
    const bool fg = dominance_from_values(f_values, g_values, c, tol).holds;
    const bool gf = dominance_from_values(g_values, f_values, c, tol).holds;
    if (fg && gf) return ActRelation::Indifferent;
    if (fg) return ActRelation::StrictlyPrefers;
    if (gf) return ActRelation::StrictlyDispreferred;
    return ActRelation::Incomparable;
}

ActRelation relation(const AffineUtility& u, const PerceptionFunction& c,
                     const Act& f, const Act& g, double tol) {
    return relation_from_values(f.values(u), g.values(u), c, tol);
}

Act mixture(const Act& f, const Act& g, double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("mixture weight must lie strictly between 0 and 1");
    if (f.states() != g.states())
        throw DimensionMismatch("acts are defined over different state counts");
    std::vector<std::vector<double>> outcomes(f.states());
    for (std::size_t s = 0; s < f.states(); ++s) {
        const auto& a = f.outcome(s);
        const auto& b = g.outcome(s);
        if (a.size() != b.size()) throw DimensionMismatch("outcome dimensions differ");
        outcomes[s].resize(a.size());
        for (std::size_t k = 0; k < a.size(); ++k)
            outcomes[s][k] = lambda * a[k] + (1.0 - lambda) * b[k];
    }
    return Act(std::move(outcomes));
}

} // namespace vbp
