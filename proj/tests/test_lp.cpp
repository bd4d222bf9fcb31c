#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "femto/lp.hpp"
#include "femto/rng.hpp"

using namespace femto;

namespace {

Matrix from_rows(const std::vector<std::vector<double>>& rows)
{
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(i, j) = rows[i][j];
    return m;
}

} // namespace

TEST_CASE("the textbook production LP lands on its known vertex")
{
    // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18.
    Matrix a = from_rows({{1.0, 0.0}, {0.0, 2.0}, {3.0, 2.0}});
    LpResult r = solve_lp(a, {4.0, 12.0, 18.0}, {3.0, 5.0});
    REQUIRE(r.bounded);
    CHECK(r.objective == doctest::Approx(36.0));
    CHECK(r.x[0] == doctest::Approx(2.0));
    CHECK(r.x[1] == doctest::Approx(6.0));
    CHECK(r.duals[0] == doctest::Approx(0.0));
    CHECK(r.duals[1] == doctest::Approx(1.5));
    CHECK(r.duals[2] == doctest::Approx(1.0));
}

TEST_CASE("slack constraints price at zero, binding ones carry the value")
{
    // max x + y s.t. x + y <= 2, x <= 10.
    Matrix a = from_rows({{1.0, 1.0}, {1.0, 0.0}});
    LpResult r = solve_lp(a, {2.0, 10.0}, {1.0, 1.0});
    REQUIRE(r.bounded);
    CHECK(r.objective == doctest::Approx(2.0));
    CHECK(r.duals[0] == doctest::Approx(1.0));
    CHECK(r.duals[1] == doctest::Approx(0.0));
}

TEST_CASE("random bounded programs satisfy strong duality throughout")
{
    RandomStream rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t m = 1 + static_cast<std::size_t>(rng.uniform() * 6.0);
        std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 6.0);
        Matrix a(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                a(i, j) = rng.uniform(0.1, 1.1); // strictly positive: bounded
        std::vector<double> b(m), c(n);
        for (auto& v : b)
            v = rng.uniform(0.5, 2.0);
        for (auto& v : c)
            v = rng.uniform(0.1, 1.0);

        LpResult r = solve_lp(a, b, c);
        REQUIRE(r.bounded);

        // Primal feasibility.
        std::vector<double> ax(m, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                ax[i] += a(i, j) * r.x[j];
        for (std::size_t i = 0; i < m; ++i)
            CHECK(ax[i] <= b[i] + 1e-8);
        for (std::size_t j = 0; j < n; ++j)
            CHECK(r.x[j] >= -1e-10);

        // Dual feasibility: y >= 0 and A'y >= c.
        std::vector<double> aty(n, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            CHECK(r.duals[i] >= -1e-10);
            for (std::size_t j = 0; j < n; ++j)
                aty[j] += a(i, j) * r.duals[i];
        }
        for (std::size_t j = 0; j < n; ++j)
            CHECK(aty[j] >= c[j] - 1e-8);

        // Strong duality and both complementary slackness families.
        double primal = 0.0, dual = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            primal += c[j] * r.x[j];
        for (std::size_t i = 0; i < m; ++i)
            dual += b[i] * r.duals[i];
        CHECK(primal == doctest::Approx(r.objective).epsilon(1e-9));
        CHECK(primal == doctest::Approx(dual).epsilon(1e-7));
        for (std::size_t i = 0; i < m; ++i)
            CHECK(std::abs(r.duals[i] * (b[i] - ax[i])) < 1e-7);
        for (std::size_t j = 0; j < n; ++j)
            CHECK(std::abs(r.x[j] * (aty[j] - c[j])) < 1e-7);
    }
}

TEST_CASE("an uncapped direction reports unbounded")
{
    Matrix a = from_rows({{1.0, -1.0}});
    LpResult r = solve_lp(a, {1.0}, {0.0, 1.0});
    CHECK_FALSE(r.bounded);
}

TEST_CASE("degenerate zero rows leave the start vertex but still solve")
{
    // max y s.t. x + y <= 1, y - x <= 0: pushed to x = y = 1/2.
    Matrix a = from_rows({{1.0, 1.0}, {-1.0, 1.0}});
    LpResult r = solve_lp(a, {1.0, 0.0}, {0.0, 1.0});
    REQUIRE(r.bounded);
    CHECK(r.objective == doctest::Approx(0.5));
    CHECK(r.x[0] == doctest::Approx(0.5));
    CHECK(r.x[1] == doctest::Approx(0.5));

    // Fully pinned at the origin.
    Matrix a2 = from_rows({{1.0}, {1.0}});
    LpResult r2 = solve_lp(a2, {0.0, 2.0}, {1.0});
    REQUIRE(r2.bounded);
    CHECK(r2.objective == doctest::Approx(0.0));
}

TEST_CASE("shape errors and negative right-hand sides are rejected")
{
    Matrix a = from_rows({{1.0, 1.0}});
    CHECK_THROWS_AS(solve_lp(a, {1.0, 2.0}, {1.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_lp(a, {1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(solve_lp(a, {-1.0}, {1.0, 1.0}), std::invalid_argument);
}
