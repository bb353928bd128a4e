#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "vbp/profile.hpp"

using namespace vbp;
using vbp::test::bewley_cap;
using vbp::test::two_p1;

TEST_CASE("prior clamps tiny negatives and rejects real ones") {
    Prior p({1.0 + 5e-10, -5e-10});
    CHECK(p[1] == 0.0);
    CHECK_THROWS_AS(Prior({0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(Prior({1.2, -0.2}), std::invalid_argument);
    CHECK_THROWS_AS(Prior(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("polyhedron membership and feasibility") {
    Polyhedron cap({{{0.0, 1.0}, 0.4}});
    CHECK(cap.contains(std::vector<double>{0.7, 0.3}));
    CHECK(!cap.contains(std::vector<double>{0.5, 0.5}));
    CHECK(cap.violation(std::vector<double>{0.5, 0.5}) == doctest::Approx(0.1));

    const auto inside = cap.feasible_point(2);
    REQUIRE(inside);
    CHECK(cap.contains(inside->weights()));

    Polyhedron empty({{{0.0, -1.0}, -2.0}}); // p1 >= 2
    CHECK(!empty.feasible_point(2));

    // No rows means the whole simplex.
    CHECK(Polyhedron{}.feasible_point(3));
}

TEST_CASE("perception evaluation") {
    const PerceptionFunction c = two_p1();
    CHECK(c.evaluate(Prior({0.0, 1.0})) == doctest::Approx(2.0));
    CHECK(c.evaluate(Prior({1.0, 0.0})) == doctest::Approx(0.0));

    const PerceptionFunction half = bewley_cap(0.5);
    CHECK(half.evaluate(Prior({0.5, 0.5})) == 0.0);
    CHECK(half.evaluate(Prior({0.0, 1.0})) == kInf);
}

TEST_CASE("zero set") {
    // c = 2 p1: the zero set is the vertex {(1,0)}.
    const Polyhedron z = two_p1().zero_set();
    CHECK(z.contains(std::vector<double>{1.0, 0.0}));
    CHECK(!z.contains(std::vector<double>{0.9, 0.1}));

    // Bewley case: zero set is the prior set itself.
    const Polyhedron zb = bewley_cap(0.4).zero_set();
    CHECK(zb.contains(std::vector<double>{0.6, 0.4}));
    CHECK(!zb.contains(std::vector<double>{0.5, 0.5}));
}

TEST_CASE("simplex minimum") {
    CHECK(*two_p1().simplex_minimum(2) == doctest::Approx(0.0).epsilon(1e-9));

    // max(2 p1, 2 - 2 p1) has minimum 1 at p1 = 1/2; not a valid perception.
    PerceptionFunction bad({{{0.0, 2.0}, 0.0}, {{0.0, -2.0}, 2.0}}, Polyhedron{});
    CHECK(*bad.simplex_minimum(2) == doctest::Approx(1.0));

    // A negative minimum must be detected, not clipped at 0.
    PerceptionFunction neg({{{0.0, 1.0}, -1.0}}, Polyhedron{});
    CHECK(*neg.simplex_minimum(2) == doctest::Approx(-1.0));

    // Domain missing the simplex entirely.
    PerceptionFunction off({}, Polyhedron({{{-1.0, -1.0}, -2.0}})); // p0 + p1 >= 2
    CHECK(!off.simplex_minimum(2));
}

TEST_CASE("bewley round-trip through zero_set") {
    const PerceptionFunction c = bewley_cap(0.4);
    const Polyhedron z = c.zero_set();
    for (int k = 0; k <= 10; ++k) {
        const std::vector<double> p = {1.0 - k / 10.0, k / 10.0};
        CHECK(z.contains(p) == c.domain().contains(p));
    }
}

TEST_CASE("fixture profiles validate cleanly") {
    for (const char* name : {"example1.json", "flatzero.json", "dictator.json", "bewley_disjoint.json"}) {
        const Profile profile = test::load_fixture(name);
        CHECK(validate_profile(profile).empty());
    }
}

TEST_CASE("validation names the agent and invariant") {
    Profile profile = test::load_fixture("example1.json");

    SUBCASE("constant social utility") {
        profile.social.utility = AffineUtility({0.0, 0.0, 0.0}, 1.0);
        const auto issues = validate_profile(profile);
        REQUIRE(issues.size() == 1);
        CHECK(issues[0].agent == 0);
        CHECK(issues[0].message == "gradient != 0 violated for agent 0");
    }

    SUBCASE("perception minimum away from zero") {
        profile.agents[0].perception =
            PerceptionFunction({{{1.0, 1.0}, 0.0}}, Polyhedron{}); // c == 1 on the simplex
        const auto issues = validate_profile(profile);
        REQUIRE(issues.size() == 1);
        CHECK(issues[0].agent == 1);
        CHECK(issues[0].invariant == "min-zero");
        CHECK(issues[0].message.find("min c = 0 violated (agent 1") == 0);
    }

    SUBCASE("empty effective domain") {
        profile.agents[1].perception = PerceptionFunction({}, Polyhedron({{{-1.0, -1.0}, -2.0}}));
        const auto issues = validate_profile(profile);
        REQUIRE(issues.size() == 1);
        CHECK(issues[0].agent == 2);
        CHECK(issues[0].invariant == "nonempty-domain");
    }

    SUBCASE("too few individuals") {
        profile.agents.resize(1);
        const auto issues = validate_profile(profile);
        REQUIRE(issues.size() == 1);
        CHECK(issues[0].agent == ValidationIssue::kProfileLevel);
        CHECK(issues[0].message == "n >= 2 violated");
    }

    SUBCASE("bundled act of wrong shape") {
        profile.acts[0].act = Act({{0.0, 0.0, 0.0}}); // one state only
        const auto issues = validate_profile(profile);
        REQUIRE(issues.size() == 1);
        CHECK(issues[0].invariant == "act-states");
    }
}

TEST_CASE("act utility values") {
    const AffineUtility u({1.0, 0.0, 1.0}, 0.0);
    const Act f({{0.0, 0.0, 0.0}, {0.0, 0.0, 2.0}});
    const auto v = f.values(u);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == doctest::Approx(0.0));
    CHECK(v[1] == doctest::Approx(2.0));
}
