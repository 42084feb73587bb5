#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "degenop/cutoff.hpp"
#include "fixtures.hpp"

using namespace degenop;

TEST_CASE("cutoff junction values reproduce the transition cubics") {
    SECTION("rising cubic hits 0 and 1 with flat slopes") {
        for (int n : {4, 8, 16, 32, 64, 128}) {
            CutoffFunction cut(n, 0.0);
            double inv = 1.0 / n;
            INFO("n=" << n);
            CHECK(cut(inv, 0) == Catch::Approx(0.0).margin(1e-12));
            CHECK(cut(2 * inv, 0) == Catch::Approx(1.0).margin(1e-12));
            CHECK(cut(1 - 2 * inv, 0) == Catch::Approx(1.0).margin(1e-12));
            CHECK(cut(1 - inv, 0) == Catch::Approx(0.0).margin(1e-12));
        }
    }
    SECTION("the rising coefficients evaluate -2+9-12+5 and -16+36-24+5") {
        CutoffFunction cut(10, 0.0);
        // at x = 1/n the cubic collapses to -2 + 9 - 12 + 5
        CHECK(-2.0 + 9.0 - 12.0 + 5.0 == 0.0);
        CHECK(-16.0 + 36.0 - 24.0 + 5.0 == 1.0);
        CHECK(cut(0.1, 0) == Catch::Approx(0.0).margin(1e-13));
        CHECK(cut(0.2, 0) == Catch::Approx(1.0).margin(1e-13));
    }
    SECTION("C1 matching at every junction across the index sweep") {
        for (int n = 4; n <= 128; n *= 2) {
            CutoffFunction cut(n, 0.0);
            for (double j : cut.junctions()) {
                double h = 1e-9;
                INFO("n=" << n << " junction=" << j);
                CHECK(std::abs(cut(j - h, 0) - cut(j + h, 0)) <= 1e-8);
                CHECK(std::abs(cut(j - h, 1) - cut(j + h, 1)) <= 1e-5 * n * n);
            }
            // exact one-sided values at the junctions themselves
            double inv = 1.0 / n;
            CHECK(detail::rising_cubic(n, inv, 0) == Catch::Approx(0.0).margin(1e-12));
            CHECK(detail::rising_cubic(n, inv, 1) == Catch::Approx(0.0).margin(1e-9 * n));
            CHECK(detail::rising_cubic(n, 2 * inv, 0) == Catch::Approx(1.0).margin(1e-12));
            CHECK(detail::rising_cubic(n, 2 * inv, 1) == Catch::Approx(0.0).margin(1e-9 * n));
            CHECK(detail::falling_cubic(n, 1 - 2 * inv, 0) == Catch::Approx(1.0).margin(1e-12));
            CHECK(detail::falling_cubic(n, 1 - 2 * inv, 1) == Catch::Approx(0.0).margin(1e-9 * n));
            CHECK(detail::falling_cubic(n, 1 - inv, 0) == Catch::Approx(0.0).margin(1e-12));
            CHECK(detail::falling_cubic(n, 1 - inv, 1) == Catch::Approx(0.0).margin(1e-9 * n));
        }
    }
    SECTION("plateau and support") {
        CutoffFunction cut(10, 0.0);
        CHECK(cut(0.5, 0) == 1.0);
        CHECK(cut(0.05, 0) == 0.0);
        CHECK(cut(0.97, 0) == 0.0);
        for (double x : {0.25, 0.5, 0.75}) CHECK(0.0 <= cut(x, 0));
        for (int g = 0; g <= 100; ++g) {
            double v = cut(g / 100.0, 0);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
    SECTION("interior variant excludes a window around x0") {
        CutoffFunction cut(16, 0.5);
        CHECK(cut(0.5, 0) == 0.0);
        CHECK(cut(0.5 + 1.0 / 16, 0) == 0.0);
        CHECK(cut(0.5 - 1.0 / 16, 0) == 0.0);
        CHECK(cut(0.25, 0) == 1.0);
        CHECK(cut(0.85, 0) == 1.0);
    }
    SECTION("index below 4 is rejected") {
        CHECK_THROWS_AS(CutoffFunction(3, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(xi(2, 0.5, 0.0), std::invalid_argument);
    }
}

TEST_CASE("truncation errors against the exact symbolic oracle") {
    // v = x^2 (1-x)^2 against a = x^(1/2); reference values computed by
    // exact piecewise integration of the cutoff cubics
    auto profile = make_power_profile(0.5, 0.0);
    auto scheme = build_graded_mesh(0.0, 0.5, 32, 12);
    auto v = FunctionSample::from_polynomial(Polynomial::clamped(2, Polynomial{1.0}), 2);

    struct Expected { int n; double weighted, second; };
    const Expected table[] = {
        {8, 6.734403457928433e-05, 8.912884072307900e+00},
        {16, 3.776129743418154e-06, 7.018544019558729e+00},
        {32, 1.825726586218187e-07, 4.345754562518297e+00},
        {64, 8.292732536983058e-09, 2.410210084715189e+00},
    };
    double prev_w = std::numeric_limits<double>::infinity();
    double prev_s = std::numeric_limits<double>::infinity();
    for (const auto& e : table) {
        auto err = truncation_error(v, e.n, profile, scheme);
        INFO("n=" << e.n);
        CHECK(err.weighted == Catch::Approx(e.weighted).epsilon(1e-6));
        CHECK(err.second_derivative == Catch::Approx(e.second).epsilon(1e-8));
        CHECK(err.weighted < prev_w);
        CHECK(err.second_derivative < prev_s);
        prev_w = err.weighted;
        prev_s = err.second_derivative;
    }
}

TEST_CASE("truncation of the zero function is zero") {
    auto profile = make_power_profile(0.5, 0.0);
    auto scheme = build_graded_mesh(0.0, 0.5, 32, 8);
    auto err = truncation_error(FunctionSample::zero(2), 16, profile, scheme);
    CHECK(err.weighted == 0.0);
    CHECK(err.second_derivative == 0.0);
}

TEST_CASE("truncation vanishes identically on the plateau") {
    int n = 16;
    CutoffFunction cut(n, 0.0);
    Polynomial v = Polynomial::clamped(2, Polynomial{0.4, 1.2});
    for (int g = 0; g <= 20; ++g) {
        double x = 2.0 / n + (1.0 - 4.0 / n) * g / 20.0;
        CHECK(cut(x, 0) * v(x) - v(x) == 0.0);
    }
}

TEST_CASE("truncation errors vanish for endpoint-flat fixtures") {
    // the demo family: x^4 (1-x)^4 q(x) against weak boundary profiles
    std::mt19937_64 rng(47);
    for (double alpha : {0.25, 0.5, 0.75}) {
        auto profile = make_power_profile(alpha, 0.0);
        auto scheme = build_graded_mesh(0.0, alpha, 32, 12);
        for (int rep = 0; rep < 3; ++rep) {
            auto v = FunctionSample::from_polynomial(fixtures::random_clamped(rng, 4), 2);
            double prev_w = std::numeric_limits<double>::infinity();
            double prev_s = std::numeric_limits<double>::infinity();
            for (int n : {8, 16, 32, 64}) {
                auto err = truncation_error(v, n, profile, scheme);
                INFO("alpha=" << alpha << " rep=" << rep << " n=" << n);
                CHECK(err.weighted < prev_w);
                CHECK(err.second_derivative < prev_s);
                prev_w = err.weighted;
                prev_s = err.second_derivative;
            }
            CHECK(prev_w < 1e-3);
            CHECK(prev_s < 1e-3);
        }
    }
}

TEST_CASE("interior truncation converges for fixtures pinned at x0") {
    auto profile = make_power_profile(0.5, 0.5);
    auto scheme = build_graded_mesh(0.5, 0.5, 32, 12);
    Polynomial pin{-0.5, 1.0};  // (x - 1/2)
    auto v = FunctionSample::from_polynomial(
        Polynomial::clamped(2, Polynomial{1.0}) * pin * pin, 2);
    double prev_s = std::numeric_limits<double>::infinity();
    for (int n : {16, 32, 64, 128}) {
        auto err = truncation_error(v, n, profile, scheme);
        INFO("n=" << n);
        CHECK(err.second_derivative < prev_s);
        prev_s = err.second_derivative;
    }
}

TEST_CASE("support of the truncated function") {
    int n = 12;
    CutoffFunction cut(n, 0.0);
    Polynomial v = Polynomial::clamped(2, Polynomial{1.0, -0.3});
    for (int g = 0; g <= 40; ++g) {
        double x = g / (40.0 * n);  // inside [0, 1/n]
        CHECK(cut(x, 0) * v(x) == 0.0);
        CHECK(cut(1.0 - x, 0) * v(1.0 - x) == 0.0);
    }
}
