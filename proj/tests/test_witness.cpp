#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "vbp/oracle.hpp"
#include "vbp/witness.hpp"

using namespace vbp;

namespace {

UtilitarianDecomposition decomp_of(const Profile& profile) {
    const auto r = decompose_utility(profile);
    REQUIRE(std::holds_alternative<UtilitarianDecomposition>(r));
    return std::get<UtilitarianDecomposition>(r);
}

// Checks the separation display on a grid of the violating agent's domain.
void check_separation_on_grid(const Profile& profile, const UtilitarianDecomposition& decomp,
                              const SeparationCertificate& sep) {
    const std::size_t states = profile.num_states();
    const PerceptionFunction& ci = profile.agents[sep.agent - 1].perception;
    const double alpha = decomp.weights[sep.agent - 1];
    for (const Prior& p : oracle::grid_priors(states, 200)) {
        const double c = ci.evaluate(p);
        if (std::isinf(c)) continue;
        double lhs = alpha * c;
        for (std::size_t s = 0; s < states; ++s) lhs += sep.v[s] * p[s];
        CHECK(lhs >= sep.lambda - 1e-9);
    }
    double at_star = profile.social.perception.evaluate(sep.violating_prior);
    for (std::size_t s = 0; s < states; ++s) at_star += sep.v[s] * sep.violating_prior[s];
    CHECK(sep.lambda > at_star + kDecisionTol);
    CHECK(sep.strict_margin == doctest::Approx(sep.lambda - at_star).epsilon(1e-9));
}

} // namespace

TEST_CASE("private directions for the footnote utilities") {
    const Profile profile = test::load_fixture("example1.json");
    const DiversityWitness dw = diversity_witnesses(profile);
    REQUIRE(dw.directions.size() == 2);
    const auto& d1 = dw.directions[0];
    CHECK(d1[0] == doctest::Approx(2.0 / 3.0));
    CHECK(d1[1] == doctest::Approx(-1.0 / 3.0));
    CHECK(d1[2] == doctest::Approx(1.0 / 3.0));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            double dot = 0.0;
            const auto& grad = profile.agents[j].utility.gradient();
            for (std::size_t k = 0; k < grad.size(); ++k) dot += grad[k] * dw.directions[i][k];
            CHECK(dot == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-9));
        }
}

TEST_CASE("orthonormal private coordinates give unit directions") {
    Profile profile;
    profile.states = {"s0", "s1"};
    profile.outcome_dim = 3;
    profile.agents = {{AffineUtility({1.0, 0.0, 0.0}, 0.0), test::two_p1()},
                      {AffineUtility({0.0, 1.0, 0.0}, 0.0), test::two_p1()}};
    profile.social = {AffineUtility({0.5, 0.5, 0.0}, 0.0), test::two_p1()};
    const DiversityWitness dw = diversity_witnesses(profile);
    CHECK(dw.directions[0] == std::vector<double>{1.0, 0.0, 0.0});
    CHECK(dw.directions[1] == std::vector<double>{0.0, 1.0, 0.0});
}

TEST_CASE("duplicated agents fail diversity") {
    Profile profile = test::load_fixture("example1.json");
    profile.agents[1].utility = profile.agents[0].utility;
    CHECK_THROWS_AS(diversity_witnesses(profile), DiversityFails);
}

TEST_CASE("separation from a finite-piece violation") {
    const Profile profile = test::load_fixture("flatzero.json");
    const auto decomp = decomp_of(profile);
    const auto violation = check_theorem1_condition(profile, decomp);
    REQUIRE(violation);
    const SeparationCertificate sep = build_separation(profile, decomp, *violation);
    REQUIRE(std::holds_alternative<FinitePieceProvenance>(sep.provenance));

    // alpha = 1/2 against the piece 2 p1 (agent 1) or 2 p0 (agent 2).
    const std::size_t peak_state = sep.agent == 1 ? 1 : 0;
    CHECK(sep.v[peak_state] == doctest::Approx(-1.0));
    CHECK(sep.v[1 - peak_state] == doctest::Approx(0.0));
    CHECK(sep.lambda == doctest::Approx(0.0));
    CHECK(sep.strict_margin == doctest::Approx(1.0).epsilon(1e-9));
    check_separation_on_grid(profile, decomp, sep);
}

TEST_CASE("separation from a domain-facet violation") {
    // Bewley agent with P1 = {p1 <= 1/2}, flat social perception: the sweep
    // peaks at p* = (0,1) with slack 1/2, so M = 2, v = (0,-2), lambda = -1.
    Profile profile;
    profile.states = {"s0", "s1"};
    profile.outcome_dim = 3;
    profile.agents = {{AffineUtility({1.0, 0.0, 1.0}, 0.0), test::bewley_cap(0.5)},
                      {AffineUtility({0.0, 1.0, 1.0}, 0.0), PerceptionFunction{}}};
    profile.social = {AffineUtility({0.5, 0.5, 1.0}, 0.0), PerceptionFunction{}};
    REQUIRE(validate_profile(profile).empty());

    const auto decomp = decomp_of(profile);
    const auto violation = check_theorem1_condition(profile, decomp);
    REQUIRE(violation);
    REQUIRE(std::holds_alternative<InfiniteGapViolation>(*violation));

    const SeparationCertificate sep = build_separation(profile, decomp, *violation);
    REQUIRE(std::holds_alternative<DomainFacetProvenance>(sep.provenance));
    CHECK(sep.agent == 1);
    CHECK(std::get<DomainFacetProvenance>(sep.provenance).scale == doctest::Approx(2.0));
    CHECK(sep.v[0] == doctest::Approx(0.0));
    CHECK(sep.v[1] == doctest::Approx(-2.0));
    CHECK(sep.lambda == doctest::Approx(-1.0));
    check_separation_on_grid(profile, decomp, sep);

    // Scale invariance: (gamma v, gamma lambda) still separates.
    SeparationCertificate scaled = sep;
    for (double& v : scaled.v) v *= 3.0;
    scaled.lambda *= 3.0;
    scaled.strict_margin *= 3.0;
    check_separation_on_grid(profile, decomp, scaled);

    // The full pipeline turns the facet violation into a verified witness.
    const ParetoWitness w = construct_witness(profile, decomp, sep, diversity_witnesses(profile));
    for (const auto& cert : w.agent_certificates) CHECK(cert.holds);
    CHECK(w.social_margin < -10.0 * kDecisionTol);
}

TEST_CASE("fabricated violations are rejected") {
    const Profile profile = test::load_fixture("example1.json");
    const auto decomp = decomp_of(profile);
    FiniteGapViolation fake{Prior({1.0, 0.0}), 1, 0, 1.0, 1.0}; // no gap at (1,0)
    CHECK_THROWS_AS(build_separation(profile, decomp, ConditionViolation{fake}), InvalidViolation);
}

TEST_CASE("end-to-end witness on the flat social profile") {
    const Profile profile = test::load_fixture("flatzero.json");
    const auto decomp = decomp_of(profile);
    const auto violation = check_theorem1_condition(profile, decomp);
    REQUIRE(violation);
    const SeparationCertificate sep = build_separation(profile, decomp, *violation);
    const DiversityWitness dw = diversity_witnesses(profile);
    const ParetoWitness w = construct_witness(profile, decomp, sep, dw);

    // x is a constant act; every individual weakly prefers f to x.
    for (std::size_t s = 1; s < w.x.states(); ++s) CHECK(w.x.outcome(s) == w.x.outcome(0));
    REQUIRE(w.agent_certificates.size() == 2);
    for (const auto& cert : w.agent_certificates) {
        CHECK(cert.holds);
        CHECK(cert.margin >= -1e-7);
    }
    CHECK(w.social_margin == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(w.violating_prior[sep.agent == 1 ? 1 : 0] == doctest::Approx(1.0));

    // Independent re-check through the preference engine.
    for (std::size_t i = 1; i <= 2; ++i) {
        const Preference& pref = profile.preference(i);
        CHECK(dominance(pref.utility, pref.perception, w.f, w.x).holds);
    }
    const auto social = dominance(profile.social.utility, profile.social.perception, w.f, w.x);
    CHECK(!social.holds);
    CHECK(social.margin == doctest::Approx(w.social_margin).epsilon(1e-9));

    // The utility bookkeeping from the construction: u_i*(x) = lambda / alpha,
    // u_i*(f(s)) = v_s / alpha.
    const AffineUtility& u_star = profile.agents[sep.agent - 1].utility;
    const double alpha = decomp.weights[sep.agent - 1];
    CHECK(u_star(w.x.outcome(0)) == doctest::Approx(sep.lambda / alpha).epsilon(1e-9));
    for (std::size_t s = 0; s < 2; ++s)
        CHECK(u_star(w.f.outcome(s)) == doctest::Approx(sep.v[s] / alpha).epsilon(1e-9));
}
