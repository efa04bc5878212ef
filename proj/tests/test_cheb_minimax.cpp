#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "unirat/cheb_minimax.hpp"
#include "unirat/detail/full_family.hpp"
#include "unirat/unitary_remez.hpp"

using namespace unirat;

TEST_CASE("barycentric representation") {
    // support {0, 1}, weights {1, 1}: r(z) = (v0 (z - 1) + v1 z) / (2z - 1)
    const cplx v0{2.0, 1.0}, v1{-1.0, 0.5};
    const BarycentricRational r({0.0, 1.0}, {v0, v1}, {1.0, 1.0});
    CHECK(r.degree() == 1);
    for (cplx z : {cplx(0.3, 0.7), cplx(-2.0, 0.1), cplx(0.0, -1.0)}) {
        CHECK(std::abs(r.at(z) - (v0 * (z - 1.0) + v1 * z) / (2.0 * z - 1.0)) < 1e-14);
    }
    CHECK(r.at(0.0) == v0);
    CHECK(r.at(1.0) == v1);
    const auto poles = r.poles();
    REQUIRE(poles.size() == 1);
    CHECK(std::abs(poles[0] - 0.5) < 1e-14);
    CHECK(std::abs(r(0.25) - r.at(cplx(0.0, 0.25))) == 0.0);

    CHECK_THROWS_AS(BarycentricRational({0.0, 1.0}, {1.0}, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(BarycentricRational({0.5, 0.5}, {1.0, 2.0}, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(BarycentricRational({0.0, 1.0}, {1.0, 2.0}, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("degree 0 closed forms") {
    const auto r = solve_chebyshev(Target(kPi / 3, 0));
    CHECK(r.error_c == doctest::Approx(std::sin(kPi / 3)).epsilon(1e-9));
    for (double x : {-1.0, 0.0, 0.6}) CHECK(std::abs(r.approximant(x) - 0.5) < 1e-6);
    CHECK(solve_chebyshev(Target(2.0, 0)).error_c == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("omega = 0 is exact") {
    for (int n : {0, 1, 3}) {
        const auto r = solve_chebyshev(Target(0.0, n));
        CHECK(r.error_c == 0.0);
        for (double x : {-1.0, 0.3}) CHECK(std::abs(r.approximant(x) - 1.0) < 1e-14);
    }
}

TEST_CASE("result invariants") {
    const Target t(2.5, 2);
    const int grid = default_grid_size(2);
    const auto r = solve_chebyshev(t, grid);
    REQUIRE(r.grid.size() == static_cast<std::size_t>(grid));
    REQUIRE(r.error_curve.size() == r.grid.size());
    CHECK(std::is_sorted(r.grid.begin(), r.grid.end()));
    CHECK(r.grid.front() == -1.0);
    CHECK(r.grid.back() == 1.0);
    for (std::size_t k = 0; k < r.grid.size(); k += 97) {
        CHECK(r.error_curve[k] == doctest::Approx(std::abs(r.approximant(r.grid[k]) - t(r.grid[k]))).epsilon(1e-12));
    }
    CHECK(r.error_c >= *std::max_element(r.error_curve.begin(), r.error_curve.end()));
    CHECK(r.error_c == doctest::Approx(sup_error(r.approximant, t, 20001)).epsilon(1e-9));
    CHECK(r.flatness >= 0.0);
    CHECK(r.flatness <= 1.0);
    CHECK(r.approximant.degree() <= 2);

    CHECK_THROWS_AS((void)solve_chebyshev(t, 999), std::invalid_argument);
    CHECK_THROWS_AS((void)solve_chebyshev(Target(1.0, 30), 1000), std::invalid_argument);
}

TEST_CASE("deterministic") {
    const auto a = solve_chebyshev(Target(3.7, 1));
    const auto b = solve_chebyshev(Target(3.7, 1));
    CHECK(a.error_c == b.error_c);
    CHECK(a.error_curve == b.error_curve);
}

TEST_CASE("between half the unitary error and the unitary error") {
    for (int n = 1; n <= 3; ++n) {
        for (double frac : {0.15, 0.5, 0.85}) {
            CAPTURE(n);
            CAPTURE(frac);
            const Target t(frac * (n + 1) * kPi, n);
            const double eu = solve_unitary(t).error_u;
            const double ec = solve_chebyshev(t).error_c;
            CHECK(ec >= eu / 2 - 1e-8);
            CHECK(ec <= eu + 1e-8);
        }
    }
}

TEST_CASE("degenerate frequencies give error 1") {
    for (auto [n, w] : {std::pair{0, kPi}, std::pair{1, 2 * kPi + 0.3}, std::pair{2, 3 * kPi + 1.0}}) {
        const double ec = solve_chebyshev(Target(w, n)).error_c;
        CHECK(ec >= 1.0 - 1e-4);
        CHECK(ec <= 1.0 + 1e-10);
    }
}

TEST_CASE("asymmetric optimum at high frequency") {
    // reference values from an independent Newton solve of the optimality
    // conditions over all of R_1 (no symmetry imposed)
    const auto a = solve_chebyshev(Target(0.65 * 2 * kPi, 1));
    CHECK(std::abs(a.error_c - 0.9300765461524) <= 1e-8);
    // an independently computed approximant has sup error 0.98515955 here
    const auto b = solve_chebyshev(Target(0.70 * 2 * kPi, 1));
    CHECK(b.error_c <= 0.98515955);
    CHECK(b.error_c >= 0.98515);
    // the optimum is not conjugate-symmetric: |r - f| differs at x and -x
    double asym = 0.0;
    for (double x : {0.3, 0.6, 0.9}) {
        const double e1 = std::abs(a.approximant(x) - a.target(x));
        const double e2 = std::abs(a.approximant(-x) - a.target(-x));
        asym = std::max(asym, std::abs(e1 - e2));
    }
    CHECK(asym > 1e-3);
}

TEST_CASE("full-family search keeps the reported optimum") {
    const Target t(0.8 * 3 * kPi, 2);
    const auto r = solve_chebyshev(t);
    const auto points = detail::full_family_search(t, r.approximant, r.grid);
    REQUIRE_FALSE(points.empty());
    for (const auto& p : points) {
        CHECK(p.r.degree() <= 2);
        CHECK(sup_error(p.r, t, default_grid_size(2)) >= r.error_c - 1e-9);
    }
}

TEST_CASE("monotonicity check") {
    const std::vector<double> sin_range{0.3, 0.6, 0.9};
    const auto a = error_monotonicity_check(0, sin_range);
    CHECK(a.pass);
    CHECK_FALSE(a.first_violation);
    REQUIRE(a.errors.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) CHECK(a.errors[k] == doctest::Approx(std::sin(sin_range[k])).epsilon(1e-9));

    const std::vector<double> same{1.7, 1.7};
    CHECK(error_monotonicity_check(2, same).pass);

    std::vector<double> logs(20);
    for (int k = 0; k < 20; ++k) logs[k] = 0.05 * std::pow(6.2 / 0.05, k / 19.0);
    const auto c = error_monotonicity_check(1, logs);
    CHECK(c.pass);

    const std::vector<double> down{1.0, 0.5};
    CHECK_THROWS_AS((void)error_monotonicity_check(0, down), std::invalid_argument);
}
