#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "vbp/lp.hpp"

using namespace vbp::lp;

namespace {

LinearProgram simplex_lp(std::vector<double> objective) {
    LinearProgram lp;
    const std::size_t n = objective.size();
    lp.objective = std::move(objective);
    lp.add_row(std::vector<double>(n, 1.0), Relation::Eq, 1.0);
    return lp;
}

} // namespace

TEST_CASE("vertex of the simplex") {
    LinearProgram lp = simplex_lp({0.0, 1.0});
    const LpOutcome out = solve(lp);
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK(out.value == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(out.primal[0] == doctest::Approx(1.0));
    CHECK(out.primal[1] == doctest::Approx(0.0));
}

TEST_CASE("epigraph minimum of 2*p1 over the simplex is 0") {
    // minimize 2 p1 - t ... encoded as: minimize t with t >= 2 p1 gives the
    // same optimum as the perception minimum in the fixture.
    LinearProgram lp = simplex_lp({0.0, 0.0});
    lp.add_variable(1.0); // t >= 0
    for (auto& r : lp.rows) r.coeffs.resize(3, 0.0);
    lp.add_row({0.0, 2.0, -1.0}, Relation::LessEq, 0.0); // 2 p1 <= t
    const LpOutcome out = solve(lp);
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK(out.value == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("infeasible program carries a verified Farkas certificate") {
    LinearProgram lp = simplex_lp({0.0, 0.0});
    lp.add_row({0.0, -1.0}, Relation::LessEq, -2.0); // p1 >= 2
    const LpOutcome out = solve(lp);                 // verification happens inside solve
    REQUIRE(out.status == LpStatus::Infeasible);
    CHECK(out.dual.size() == 2);
}

TEST_CASE("malformed programs are rejected") {
    LinearProgram lp = simplex_lp({0.0, 1.0});
    lp.add_row({1.0}, Relation::Eq, 0.0); // wrong width
    CHECK_THROWS_AS(solve(lp), MalformedProgram);

    LinearProgram lp2 = simplex_lp({0.0, std::numeric_limits<double>::infinity()});
    CHECK_THROWS_AS(solve(lp2), MalformedProgram);
}

TEST_CASE("unbounded detection") {
    LinearProgram lp;
    lp.add_variable(-1.0);
    const LpOutcome out = solve(lp);
    CHECK(out.status == LpStatus::Unbounded);
}

TEST_CASE("free variables and lower bounds") {
    // minimize x with x free, x >= -5 via constraint row.
    LinearProgram lp;
    lp.add_variable(1.0, /*is_free=*/true);
    lp.add_row({-1.0}, Relation::LessEq, 5.0); // -x <= 5
    const LpOutcome out = solve(lp);
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK(out.value == doctest::Approx(-5.0));

    LinearProgram lp2;
    lp2.add_variable(1.0, /*is_free=*/false, /*lo=*/2.5);
    const LpOutcome out2 = solve(lp2);
    REQUIRE(out2.status == LpStatus::Optimal);
    CHECK(out2.value == doctest::Approx(2.5));
}

TEST_CASE("scaling the objective scales the optimum and keeps the vertex") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        LinearProgram lp = simplex_lp({coef(rng), coef(rng), coef(rng)});
        lp.add_row({coef(rng), coef(rng), coef(rng)}, Relation::LessEq, 2.0);
        const LpOutcome base = solve(lp);
        REQUIRE(base.status == LpStatus::Optimal);

        const double gamma = 3.5;
        LinearProgram scaled = lp;
        for (double& c : scaled.objective) c *= gamma;
        const LpOutcome out = solve(scaled);
        REQUIRE(out.status == LpStatus::Optimal);
        CHECK(out.value == doctest::Approx(gamma * base.value).epsilon(1e-8));
        for (std::size_t j = 0; j < lp.num_vars(); ++j)
            CHECK(out.primal[j] == doctest::Approx(base.primal[j]).epsilon(1e-8));
    }
}

TEST_CASE("LP optimum is a lower bound for any feasible grid point") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        const std::vector<double> c = {coef(rng), coef(rng), coef(rng)};
        LinearProgram lp = simplex_lp(c);
        const std::vector<double> a = {coef(rng), coef(rng), coef(rng)};
        lp.add_row(a, Relation::LessEq, 1.0);
        const LpOutcome out = solve(lp);
        REQUIRE(out.status == LpStatus::Optimal);

        const int r = 20;
        for (int i = 0; i <= r; ++i) {
            for (int j = 0; j + i <= r; ++j) {
                const double p0 = static_cast<double>(i) / r;
                const double p1 = static_cast<double>(j) / r;
                const double p2 = 1.0 - p0 - p1;
                if (a[0] * p0 + a[1] * p1 + a[2] * p2 > 1.0) continue;
                const double value = c[0] * p0 + c[1] * p1 + c[2] * p2;
                CHECK(out.value <= value + 1e-9);
            }
        }
    }
}

TEST_CASE("independent certificate re-verification") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> coef(-4.0, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
        LinearProgram lp = simplex_lp({coef(rng), coef(rng), coef(rng), coef(rng)});
        lp.add_row({coef(rng), coef(rng), coef(rng), coef(rng)}, Relation::LessEq, 1.5);
        lp.add_row({coef(rng), coef(rng), coef(rng), coef(rng)}, Relation::LessEq, 2.0);
        const LpOutcome out = solve(lp);
        if (out.status != LpStatus::Optimal) continue;

        // Primal feasibility, re-checked here rather than trusting solve().
        double sum = 0.0;
        for (double p : out.primal) {
            CHECK(p >= -1e-8);
            sum += p;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

        // Weak duality: dual value == primal value within the gap tolerance.
        double dual_value = 0.0;
        for (std::size_t r = 0; r < lp.rows.size(); ++r) dual_value += out.dual[r] * lp.rows[r].rhs;
        for (std::size_t j = 0; j < lp.num_vars(); ++j) {
            double reduced = lp.objective[j];
            for (std::size_t r = 0; r < lp.rows.size(); ++r)
                reduced -= out.dual[r] * lp.rows[r].coeffs[j];
            CHECK(reduced >= -1e-7);
        }
        CHECK(dual_value == doctest::Approx(out.value).epsilon(1e-6));
    }
}
