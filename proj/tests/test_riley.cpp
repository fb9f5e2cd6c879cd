#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "orderable/chebyshev.hpp"
#include "orderable/error.hpp"
#include "orderable/riley.hpp"
#include "orderable/rootcurve.hpp"

using namespace orderable;
using doctest::Approx;

namespace {

oracle::Knot as_oracle(const KnotSpec& s) {
    const auto fam = s.family == Family::EvenPlus    ? oracle::Fam::EvenPlus
                     : s.family == Family::EvenMinus ? oracle::Fam::EvenMinus
                                                     : oracle::Fam::OddMinus;
    return {fam, s.m, s.n};
}

const Family kFamilies[] = {Family::EvenPlus, Family::EvenMinus, Family::OddMinus};

}  // namespace

TEST_CASE("t and z at x = y + 2") {
    for (Family f : kFamilies)
        for (double y : {1.9, 2.5, 7.0}) {
            const KnotSpec s = KnotSpec::make(f, 2, 3);
            CHECK(trace_t(s, y + 2.0, y) == 2.0);
            CHECK(z_val(s, y + 2.0, y) == 1.0);
            CHECK(riley_eval(s, y + 2.0, y) == Approx(1.0).epsilon(1e-14));
        }
}

TEST_CASE("printed values") {
    const KnotSpec em = KnotSpec::make(Family::EvenMinus, 1, 2);
    CHECK(trace_t(em, 0.0, 2.5) == Approx(4.25).epsilon(1e-15));
    CHECK(z_val(em, 0.0, 2.5) == Approx(7.75).epsilon(1e-15));
    CHECK(riley_eval(em, 0.0, 2.5) == Approx(-15.875).epsilon(1e-14));
    // S_2(t) - z S_1(t) at t = 4.25, z = 7.75
    CHECK(riley_eval(em, 0.0, 2.5) == Approx(4.25 * 4.25 - 1.0 - 7.75 * 4.25).epsilon(1e-14));

    const KnotSpec om = KnotSpec::make(Family::OddMinus, 1, 2);
    CHECK(trace_t(om, 5.0, 3.0) == 2.0);
    CHECK(trace_t(om, 6.0, 3.0) == Approx(6.0).epsilon(1e-15));
    CHECK(z_val(om, 6.0, 3.0) == Approx(7.0).epsilon(1e-15));
}

TEST_CASE("riley_eval against the long double oracle") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> ux(0.0, 12.0), uy(2.05, 6.0);
    for (Family f : kFamilies)
        for (int m = 1; m <= 3; ++m)
            for (int n = 1; n <= 4; ++n) {
                const KnotSpec s = KnotSpec::make(f, m, n);
                for (int i = 0; i < 20; ++i) {
                    const double x = ux(rng), y = uy(rng);
                    const auto k = as_oracle(s);
                    CHECK(trace_t(s, x, y) == Approx(static_cast<double>(oracle::t_of(k, x, y))).epsilon(1e-11));
                    CHECK(z_val(s, x, y) == Approx(static_cast<double>(oracle::z_of(k, x, y))).epsilon(1e-11));
                    const double ref = static_cast<double>(oracle::riley(k, x, y));
                    // size of the two terms of S_p(t) - z S_{p-1}(t)
                    const oracle::ld t = oracle::t_of(k, x, y), z = oracle::z_of(k, x, y);
                    const double scale = static_cast<double>(
                        std::max({1.0L, std::abs(oracle::cheb(k.p(), t)), std::abs(z * oracle::cheb(k.p() - 1, t))}));
                    CHECK(std::abs(riley_eval(s, x, y) - ref) / scale < 1e-11);
                }
            }
}

TEST_CASE("polynomial coefficients reproduce riley_eval") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> ux(-3.0, 15.0);
    for (Family f : kFamilies)
        for (int m = 1; m <= 3; ++m)
            for (int n = 1; n <= 4; ++n)
                for (double y : {2.3, 4.0, 9.0}) {
                    const KnotSpec s = KnotSpec::make(f, m, n);
                    const Polynomial poly = riley_coeffs(s, y);
                    REQUIRE(poly.degree() == n);
                    double abs_sum_max = 0.0;
                    for (int i = 0; i < 20; ++i) {
                        const double x = ux(rng);
                        double abs_sum = 0.0, px = 1.0;
                        for (double c : poly.coeffs) {
                            abs_sum += std::abs(c) * px;
                            px *= std::abs(x);
                        }
                        abs_sum_max = std::max(abs_sum_max, abs_sum);
                        CHECK(std::abs(poly(x) - riley_eval(s, x, y)) <= 1e-10 * std::max(1.0, abs_sum));
                    }
                }
}

TEST_CASE("OddMinus leading coefficient is negative") {
    for (int m = 1; m <= 4; ++m)
        for (int n = 1; n <= 4; ++n) {
            const KnotSpec s = KnotSpec::make(Family::OddMinus, m, n);
            for (double dy : {1e-3, 0.1, 1.0, 10.0, 1e3}) {
                const double y = left_endpoint(s) + dy;
                CHECK(riley_coeffs(s, y).leading() < 0.0);
                CHECK(RileySlice(s, y).leading() < 0.0);
            }
        }
}

TEST_CASE("degenerate leading coefficient is reported") {
    // D = S_1 - S_0 vanishes at y = 1 for m = 1
    const KnotSpec s = KnotSpec::make(Family::OddMinus, 1, 2);
    CHECK_THROWS_AS(riley_coeffs(s, 1.0), NumericError);
    try {
        riley_coeffs(s, 1.0);
    } catch (const NumericError& e) {
        CHECK(e.fault() == NumericFault::DegenerateLeading);
    }
    // H = S_1 vanishes at y = 0 for the even families with m = 2
    CHECK_THROWS_AS(riley_coeffs(KnotSpec::make(Family::EvenMinus, 2, 2), 0.0), NumericError);
}

TEST_CASE("G^2 - yGH + H^2 = 1") {
    for (int m = 1; m <= 6; ++m)
        for (double y : {1.5, 2.0, 3.0, 50.0}) {
            const TraceData td = trace_data(m, y);
            const double scale = std::max(1.0, td.G * td.G);
            CHECK(std::abs(td.G * td.G - y * td.G * td.H + td.H * td.H - 1.0) / scale < 1e-12);
        }
}

TEST_CASE("OddMinus: t + 2 - x = (y - 2)((x - 2)GH - G^2 - H^2)") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ux(0.0, 20.0), uy(1.0, 6.0);
    for (int m = 1; m <= 3; ++m) {
        const KnotSpec s = KnotSpec::make(Family::OddMinus, m, 2);
        for (int i = 0; i < 30; ++i) {
            const double x = ux(rng), y = uy(rng);
            const TraceData td = trace_data(m, y);
            const double lhs = trace_t(s, x, y) + 2.0 - x;
            const double rhs = (y - 2.0) * ((x - 2.0) * td.G * td.H - td.G * td.G - td.H * td.H);
            CHECK(lhs == Approx(rhs).epsilon(1e-9).scale(std::max(1.0, x * td.G * td.G)));
        }
    }
}

TEST_CASE("identities at roots") {
    for (Family f : {Family::EvenMinus, Family::OddMinus})
        for (int m = 1; m <= 3; ++m)
            for (int n = 2; n <= 4; ++n)
                for (double y : {2.1, 3.0, 5.0}) {
                    const KnotSpec s = KnotSpec::make(f, m, n);
                    const RootCurveSample rc = roots_at(s, y);
                    const RileySlice slice(s, y);
                    for (int j = 0; j < n; ++j) {
                        const double e = rc.offsets[j];
                        const double t = slice.t_at(e), z = slice.z_at(e);
                        const double sn1 = cheb_eval(n - 1, t);
                        CHECK((z * z - t * z + 1.0) * sn1 * sn1 == Approx(1.0).epsilon(1e-8));
                        if (f == Family::OddMinus) {
                            const TraceData td = slice.traces();
                            const double x = y + 2.0 + e;
                            const double q = (x - 2.0) * td.G * td.H - td.G * td.G - td.H * td.H;
                            CAPTURE(m);
                            CAPTURE(n);
                            CAPTURE(y);
                            CAPTURE(j);
                            const double size = std::abs((t - 2.0) * (x - 2.0) * td.G * td.H * sn1 * sn1);
                            CHECK(std::abs((t - 2.0) * q * sn1 * sn1 - 1.0) < 1e-10 * std::max(1.0, size));
                        }
                    }
                }
}

TEST_CASE("large y goes through xi without overflow") {
    const KnotSpec s = KnotSpec::make(Family::EvenMinus, 3, 3);
    const RileySlice slice(s, 1e9);
    CHECK(std::isfinite(slice.alpha()));
    CHECK(std::isfinite(slice.beta()));
    CHECK(slice.eval_offset(0.0) == 1.0);
    const TraceData td = trace_data(3, 1e9);
    CHECK(td.G / td.H == Approx(1e9).epsilon(1e-9));
}
