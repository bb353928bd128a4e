#include "vbp/witness.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace vbp {

DiversityWitness diversity_witnesses(const Profile& profile) {
    const std::size_t n = profile.num_agents();
    const std::size_t m = profile.outcome_dim;
    Eigen::MatrixXd g(n, m); // rows = individual gradients
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < m; ++k) g(i, k) = profile.agents[i].utility.gradient()[k];

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(g);
    cod.setThreshold(1e-9);
    if (static_cast<std::size_t>(cod.rank()) < n)
        throw DiversityFails("individual utility gradients are linearly dependent");

    DiversityWitness dw;
    dw.directions.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::VectorXd target = Eigen::VectorXd::Zero(n);
        target(i) = 1.0;
        const Eigen::VectorXd delta = cod.solve(target); // least-norm solution of G delta = e_i
        dw.directions[i].assign(delta.data(), delta.data() + m);
    }
    return dw;
}

SeparationCertificate build_separation(const Profile& profile,
                                       const UtilitarianDecomposition& decomp,
                                       const ConditionViolation& violation) {
    const std::size_t states = profile.num_states();
    const PerceptionFunction& c0 = profile.social.perception;

    SeparationCertificate cert;
    if (const auto* fin = std::get_if<FiniteGapViolation>(&violation)) {
        const std::size_t i = fin->agent - 1;
        const double alpha = decomp.weights[i];
        const auto& piece = profile.agents[i].perception.pieces().at(fin->piece);

        // Re-derive the gap before trusting the violation.
        double piece_value = piece.offset;
        for (std::size_t s = 0; s < states; ++s) piece_value += piece.gradient[s] * fin->at[s];
        const double gap = alpha * piece_value - c0.evaluate(fin->at);
        if (!(gap > 0.0) || std::abs(gap - fin->piece_gap) > kFeasTol * 100.0 * (1.0 + std::abs(gap)))
            throw InvalidViolation("finite-gap violation does not reproduce");

        cert.agent = fin->agent;
        cert.v.resize(states);
        for (std::size_t s = 0; s < states; ++s) cert.v[s] = -alpha * piece.gradient[s];
        cert.lambda = alpha * piece.offset;
        cert.strict_margin = gap;
        cert.violating_prior = fin->at;
        cert.provenance = FinitePieceProvenance{fin->piece};
    } else {
        const auto& inf = std::get<InfiniteGapViolation>(violation);
        double slack = -inf.facet.bound;
        for (std::size_t s = 0; s < states; ++s) slack += inf.facet.normal[s] * inf.at[s];
        const double c0_at = c0.evaluate(inf.at);
        if (!(slack > 0.0) || !std::isfinite(c0_at) ||
            std::abs(slack - inf.slack) > kFeasTol * 100.0 * (1.0 + std::abs(slack)))
            throw InvalidViolation("domain-facet violation does not reproduce");

        const double scale = (c0_at + 1.0) / slack;
        cert.agent = inf.agent;
        cert.v.resize(states);
        for (std::size_t s = 0; s < states; ++s) cert.v[s] = -scale * inf.facet.normal[s];
        cert.lambda = -scale * inf.facet.bound;
        cert.strict_margin = scale * slack - c0_at; // = 1 by the choice of scale
        cert.violating_prior = inf.at;
        cert.provenance = DomainFacetProvenance{inf.facet, scale};
    }
    return cert;
}

ParetoWitness construct_witness(const Profile& profile, const UtilitarianDecomposition& decomp,
                                const SeparationCertificate& sep, const DiversityWitness& dw) {
    const std::size_t states = profile.num_states();
    const std::size_t m = profile.outcome_dim;
    const std::size_t i_star = sep.agent - 1;
    const double alpha = decomp.weights[i_star];
    if (alpha <= kWeightTol)
        throw InvalidViolation("separation names an agent with zero aggregation weight");

    const AffineUtility& u_star = profile.agents[i_star].utility;
    const std::vector<double>& delta = dw.directions[i_star];
    const double base = u_star.intercept(); // u_star at the origin anchor

    auto point_on_line = [&](double target_utility) {
        std::vector<double> outcome(m);
        const double step = target_utility - base; // u_star gains 1 per unit of delta
        for (std::size_t k = 0; k < m; ++k) outcome[k] = step * delta[k];
        return outcome;
    };

    std::vector<std::vector<double>> f_outcomes(states);
    for (std::size_t s = 0; s < states; ++s) f_outcomes[s] = point_on_line(sep.v[s] / alpha);
    Act f(std::move(f_outcomes));
    Act x(std::vector<std::vector<double>>(states, point_on_line(sep.lambda / alpha)));

    ParetoWitness witness;
    witness.f = f;
    witness.x = x;
    witness.violating_prior = sep.violating_prior;

    for (std::size_t i = 0; i < profile.num_agents(); ++i) {
        auto cert = dominance(profile.agents[i].utility, profile.agents[i].perception, f, x);
        if (!cert.holds)
            throw VerificationFailed("individual dominance certificate failed for the constructed acts");
        witness.agent_certificates.push_back(std::move(cert));
    }

    const auto social = dominance(profile.social.utility, profile.social.perception, f, x);
    witness.social_margin = social.margin;

    // The objective at p* itself must reproduce (minus) the separation margin.
    const std::vector<double> fv = f.values(profile.social.utility);
    const std::vector<double> xv = x.values(profile.social.utility);
    double at_pstar = profile.social.perception.evaluate(sep.violating_prior);
    for (std::size_t s = 0; s < states; ++s)
        at_pstar += sep.violating_prior[s] * (fv[s] - xv[s]);
    if (social.margin > at_pstar + kFeasTol * 100.0 ||
        at_pstar > -sep.strict_margin + kFeasTol * 100.0 * (1.0 + std::abs(sep.strict_margin)))
        throw VerificationFailed("social violation does not reproduce the separation margin");
    if (!(witness.social_margin < -10.0 * kDecisionTol))
        throw VerificationFailed("social margin does not clear the strictness threshold");

    return witness;
}

} // namespace vbp
