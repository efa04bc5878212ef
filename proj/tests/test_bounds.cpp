#include <cmath>
#include <vector>

#include "doctest.h"
#include "unirat/bounds.hpp"

using namespace unirat;

TEST_CASE("degree 0 closed forms") {
    auto e = closed_form_n0(kPi / 2);
    CHECK(e.error_c == 1.0);
    CHECK(e.error_u == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    e = closed_form_n0(0.0);
    CHECK(e.error_c == 0.0);
    CHECK(e.error_u == 0.0);
    e = closed_form_n0(kPi / 6);
    CHECK(e.error_c == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(e.error_u == doctest::Approx(0.5176381).epsilon(1e-7));
    e = closed_form_n0(2.0);
    CHECK(e.error_c == 1.0);
    CHECK(e.error_u == doctest::Approx(2.0 * std::sin(1.0)));
    for (double w : {kPi, 4.0, 100.0}) {
        CHECK(closed_form_n0(w).error_c == 1.0);
        CHECK(closed_form_n0(w).error_u == 2.0);
    }
    CHECK_THROWS_AS((void)closed_form_n0(-0.1), std::invalid_argument);
}

TEST_CASE("asymptotic constant") {
    CHECK(asymptotic_constant(0).str() == "1");
    CHECK(asymptotic_constant(1).str() == "1/48");
    CHECK(asymptotic_constant(2).str() == "1/11520");
    // 36 / (64 * 720 * 5040)
    CHECK(asymptotic_constant(3).str() == "1/6451200");
    for (int n = 0; n <= 12; ++n) {
        const double ref = std::exp(2.0 * std::lgamma(n + 1.0) - n * std::log(4.0) - std::lgamma(2.0 * n + 1.0) -
                                    std::lgamma(2.0 * n + 2.0));
        CHECK(asymptotic_constant(n).to_double() == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)asymptotic_constant(40), Overflow);
    CHECK_THROWS_AS((void)asymptotic_constant(-1), std::invalid_argument);
}

TEST_CASE("Kolmogorov gamma") {
    const auto c0 = solve_unitary(Target(kPi / 2, 0));
    const auto g0 = kolmogorov_gamma(c0);
    REQUIRE(g0.size() == 2);
    for (auto g : g0) CHECK(g.real() == doctest::Approx(-1.0).epsilon(1e-12));

    const auto c1 = solve_unitary(Target(1.0, 1));
    const auto g1 = kolmogorov_gamma(c1);
    REQUIRE(g1.size() == 4);
    for (auto g : g1) {
        CHECK(g.real() < 0.0);
        CHECK(std::abs(g.real() - g1[0].real()) <= 1e-8);
        CHECK(std::abs(g.real() - (std::cos(c1.alpha) - 1.0)) <= 1e-8);
        // |gamma| = |r - f| at an extremum
        CHECK(std::abs(g) == doctest::Approx(c1.error_u).epsilon(1e-9));
    }

    // small alpha: Re gamma -> 0 from below
    const auto small = kolmogorov_gamma(solve_unitary(Target(1e-3, 0)));
    for (auto g : small) {
        CHECK(g.real() < 0.0);
        CHECK(g.real() > -1e-6);
    }

    auto bad = c1;
    bad.alpha += 0.1;
    CHECK_THROWS_AS((void)kolmogorov_gamma(bad), CriterionMismatch);
}

TEST_CASE("interpolation lower bound") {
    VPSetting s;
    s.nodes = {-0.5, 0.0, 0.5};
    s.eta = {-1.0, -0.3, 0.3, 1.0};
    s.extreme_errors = {0.2, 0.2, 0.2, 0.2};
    CHECK(vp_lower_bound(s) == doctest::Approx(0.1));
    s.extreme_errors = {0.0, 0.0, 0.0, 0.0};
    CHECK(vp_lower_bound(s) == 0.0);
    s.extreme_errors = {0.4, 0.1, 0.3, 0.2};
    CHECK(vp_lower_bound(s) == doctest::Approx(0.05));

    auto bad = s;
    bad.nodes = {-0.5, 0.4, 0.5};
    CHECK_THROWS_AS(bad.validate(), InvalidInterlacing);
    bad = s;
    bad.eta.front() = -1.5;
    CHECK_THROWS_AS(bad.validate(), InvalidInterlacing);
    bad = s;
    bad.extreme_errors[2] = -1e-3;
    CHECK_THROWS_AS((void)vp_lower_bound(bad), InvalidInterlacing);
    bad = s;
    bad.eta.pop_back();
    CHECK_THROWS_AS(bad.validate(), InvalidInterlacing);

    // a solved certificate gives half its own error
    const auto c = solve_unitary(Target(2.0, 1));
    VPSetting u;
    u.nodes = c.nodes;
    u.eta = c.eta;
    for (double eta : c.eta) u.extreme_errors.push_back(std::abs(c.approximant(eta) - c.target(eta)));
    CHECK(vp_lower_bound(u) == doctest::Approx(c.error_u / 2).epsilon(1e-9));
}

TEST_CASE("degenerate regime") {
    for (auto [n, w] : {std::pair{0, kPi}, std::pair{2, 10.0}, std::pair{1, 2 * kPi + 0.3}}) {
        const auto d = degenerate_errors(n, w);
        CHECK(d.error_c == 1.0);
        CHECK(d.error_u == 2.0);
        CHECK(d.witness.defect == n);
        REQUIRE(d.witness.eta.size() == static_cast<std::size_t>(n + 2));
        for (int j = 1; j <= n + 2; ++j) {
            CHECK(d.witness.eta[j - 1] == doctest::Approx((2.0 * (j - 1) - n - 1) * kPi / w));
            CHECK(d.witness.extreme_errors[j - 1] == doctest::Approx(2.0).epsilon(1e-12));
        }
        CHECK(vp_lower_bound(d.witness) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)degenerate_errors(0, kPi / 2), FrequencyTooSmall);
    CHECK_THROWS_AS((void)degenerate_errors(3, 4 * kPi - 1e-9), FrequencyTooSmall);
}

TEST_CASE("verify_bounds flags") {
    const auto r = verify_bounds(0, 1.0, 2.0 * std::sin(0.5), std::sin(1.0));
    CHECK(r.lower_ok);
    CHECK(r.upper_ok);
    CHECK_FALSE(r.degenerate);
    CHECK_FALSE(r.exact);
    CHECK(r.lower_gap == doctest::Approx(std::sin(1.0) - std::sin(0.5)));
    CHECK(r.asym_ratio_c == doctest::Approx(std::sin(1.0)));
    CHECK(r.ratio_c_over_u() == doctest::Approx(std::sin(1.0) / (2 * std::sin(0.5))));

    const auto z = verify_bounds(3, 0.0, 0.0, 0.0);
    CHECK(z.exact);
    CHECK(z.lower_ok);
    CHECK(z.upper_ok);
    CHECK(z.ratio_c_over_u() == 1.0);

    CHECK_FALSE(verify_bounds(1, 1.0, 0.02, 0.02).upper_ok);
    CHECK_FALSE(verify_bounds(1, 1.0, 0.02, 0.02 - 5e-11).upper_ok);
    CHECK(verify_bounds(1, 1.0, 0.02, 0.02 - 1e-9).upper_ok);
    CHECK_FALSE(verify_bounds(1, 1.0, 0.02, 0.01 - 1e-6).lower_ok);
    CHECK(verify_bounds(1, 1.0, 0.02, 0.01 - 1e-12).lower_ok);
    CHECK(verify_bounds(2, 3 * kPi, 2.0, 1.0).degenerate);
}

TEST_CASE("full reports") {
    const auto a = compute_bounds_report(1, 0.5);
    CHECK(a.lower_ok);
    CHECK(a.upper_ok);
    CHECK(a.unitary_converged);
    CHECK(a.asym_ratio_u >= 0.9);
    CHECK(a.asym_ratio_u <= 1.1);
    CHECK(a.asym_ratio_c >= 0.9);
    CHECK(a.asym_ratio_c <= 1.1);
    CHECK(a.max_re_gamma < 0.0);

    const auto d = compute_bounds_report(2, 3 * kPi + 1.0);
    CHECK(d.degenerate);
    CHECK(d.error_c == 1.0);
    CHECK(d.error_u == 2.0);
    CHECK(d.lower_ok);
    CHECK(d.upper_ok);

    const auto e = compute_bounds_report(2, 0.0);
    CHECK(e.exact);
    CHECK(e.error_u == 0.0);
    CHECK(e.error_c == 0.0);

    const auto n0 = compute_bounds_report(0, 1.0);
    CHECK(n0.error_u == doctest::Approx(2 * std::sin(0.5)).epsilon(1e-12));
    CHECK(n0.error_c == doctest::Approx(std::sin(1.0)).epsilon(1e-9));
}
