#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "orderable/chebyshev.hpp"
#include "orderable/error.hpp"

using namespace orderable;
using doctest::Approx;

TEST_CASE("cheb_eval base cases and small values") {
    CHECK(cheb_eval(0, 7.3) == 1.0);
    CHECK(cheb_eval(4, 2.0) == 5.0);
    CHECK(cheb_eval(-1, 5.5) == 0.0);
    CHECK(cheb_eval(3, 3.0) == 21.0);
    CHECK(cheb_eval(5, -2.0) == -6.0);
}

TEST_CASE("cheb_eval matches the long double recurrence") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> v(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double x = v(rng);
        for (int j = -20; j <= 20; ++j) {
            const double ref = static_cast<double>(oracle::cheb(j, x));
            CHECK(cheb_eval(j, x) == Approx(ref).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("mirror identity and the quadratic identity") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> v(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double x = v(rng);
        for (int j = -20; j <= 20; ++j) {
            CHECK(std::abs(cheb_eval(j, x) + cheb_eval(-j - 2, x)) < 1e-10);
            const ChebPair p = cheb_pair(j, x);
            const double scale = std::max({1.0, p.sj * p.sj, p.sjm1 * p.sjm1});
            CHECK(std::abs(p.sj * p.sj - x * p.sj * p.sjm1 + p.sjm1 * p.sjm1 - 1.0) / scale < 1e-12);
        }
    }
}

TEST_CASE("closed form in xi") {
    CHECK(cheb_eval_stable(1, 2.0) == Approx(2.5).epsilon(1e-15));
    CHECK(cheb_eval_stable(2, 2.0) == Approx(5.25).epsilon(1e-15));
    CHECK(cheb_eval_stable(0, 10.0) == Approx(1.0).epsilon(1e-15));
    for (double xi : {1.01, 1.5, 3.0, 7.0})
        for (int j = -8; j <= 25; ++j) {
            const double ref = static_cast<double>(oracle::cheb(j, static_cast<oracle::ld>(xi) + 1.0L / xi));
            CHECK(cheb_eval_stable(j, xi) == Approx(ref).epsilon(1e-12).scale(1.0));
        }
    CHECK_THROWS_AS(cheb_eval_stable(3, 1.0), NumericError);
    CHECK_THROWS_AS(cheb_eval_stable(3, 0.5), NumericError);
}

TEST_CASE("log magnitude stays finite where the value overflows") {
    const LogMagnitude lm = cheb_log_stable(400, 1e6);
    CHECK(lm.sign == 1);
    CHECK(lm.log_abs == Approx(400 * std::log(1e6)).epsilon(1e-12));
    const LogMagnitude small = cheb_log_stable(5, 2.0);
    CHECK(small.value() == Approx(cheb_eval_stable(5, 2.0)).epsilon(1e-14));
    CHECK(cheb_log_stable(-1, 3.0).sign == 0);
    CHECK(cheb_log_stable(-3, 3.0).sign == -1);
}

TEST_CASE("large argument switches to the closed form without losing agreement") {
    const double xi = 40.0, v = xi + 1.0 / xi;
    CHECK(cheb_eval(70, v) == Approx(cheb_eval_stable(70, xi)).epsilon(1e-12));
    CHECK(std::isfinite(cheb_eval(150, v)));
}

TEST_CASE("cheb_roots") {
    CHECK(cheb_roots(1) == std::vector<double>{0.0});
    const auto r2 = cheb_roots(2);
    REQUIRE(r2.size() == 2);
    CHECK(r2[0] == Approx(1.0).epsilon(1e-15));
    CHECK(r2[1] == Approx(-1.0).epsilon(1e-15));
    const auto r3 = cheb_roots(3);
    CHECK(r3[0] == Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(r3[1] == 0.0);
    CHECK(r3[2] == Approx(-std::sqrt(2.0)).epsilon(1e-15));
    for (double r : r3) CHECK(std::abs(static_cast<double>(oracle::cheb(3, r))) < 1e-14);
    CHECK_THROWS(cheb_roots(0));
    CHECK_THROWS(cheb_roots(-2));
}

TEST_CASE("cheb_diff_roots") {
    const auto t2 = cheb_diff_roots(2);
    CHECK(t2[0] == Approx(1.6180339887498949).epsilon(1e-15));
    CHECK(t2[1] == Approx(-0.6180339887498949).epsilon(1e-15));
    for (double t : t2) CHECK(std::abs(t * t - t - 1.0) < 1e-14);
    const auto t1 = cheb_diff_roots(1);
    CHECK(t1[0] == Approx(1.0).epsilon(1e-15));
    for (int n = 1; n <= 12; ++n)
        for (double t : cheb_diff_roots(n)) CHECK(std::abs(cheb_eval(n, t) - cheb_eval(n - 1, t)) < 1e-12);
    CHECK_THROWS(cheb_diff_roots(0));
}

TEST_CASE("product formulas") {
    for (int n = 1; n <= 12; ++n)
        for (double v : {2.5, 3.0, 4.0}) {
            double prod = 1.0, prod_diff = 1.0;
            for (double r : cheb_roots(n)) prod *= v - r;
            for (double t : cheb_diff_roots(n)) prod_diff *= v - t;
            CHECK(cheb_eval(n, v) == Approx(prod).epsilon(1e-8));
            CHECK(cheb_diff(n, v) == Approx(prod_diff).epsilon(1e-8));
        }
}

TEST_CASE("S_n alternates in sign on the roots of S_n - S_{n-1}") {
    for (int n = 1; n <= 12; ++n) {
        const auto t = cheb_diff_roots(n);
        for (std::size_t j = 0; j < t.size(); ++j) {
            const double s = cheb_eval(n, t[j]);
            CHECK((j % 2 == 0 ? s > 0.0 : s < 0.0));
        }
    }
}

TEST_CASE("cheb_diff keeps relative accuracy next to its roots") {
    const double t = cheb_diff_roots(5)[1];
    const double v = t + 1e-9;
    const oracle::ld ref = oracle::cheb(5, static_cast<oracle::ld>(v)) - oracle::cheb(4, static_cast<oracle::ld>(v));
    CHECK(cheb_diff(5, v) == Approx(static_cast<double>(ref)).epsilon(1e-6));
    CHECK(cheb_diff(-3, 2.5) == Approx(cheb_diff(2, 2.5)).epsilon(1e-14));
}

TEST_CASE("xi_from_trace") {
    CHECK(xi_from_trace(2.5) == Approx(2.0).epsilon(1e-15));
    const double xi = xi_from_trace(1e8);
    CHECK(xi + 1.0 / xi == Approx(1e8).epsilon(1e-15));
    const double near = xi_from_trace(2.0 + 1e-12);
    CHECK(near > 1.0);
    CHECK(near + 1.0 / near == Approx(2.0 + 1e-12).epsilon(1e-15));
}
