#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "orderable/cover.hpp"
#include "orderable/error.hpp"
#include "orderable/representation.hpp"
#include "orderable/slopes.hpp"

using namespace orderable;
using doctest::Approx;

namespace {

const KnotSpec kC3m4 = KnotSpec::make(Family::OddMinus, 1, 2);

Interval odd_range(const KnotSpec& s) { return {left_endpoint(s) + 1e-8, 1e12}; }

NumericFault fault_of(auto&& fn) {
    try {
        fn();
    } catch (const NumericError& e) {
        return e.fault();
    }
    FAIL("expected NumericError");
    return NumericFault::Domain;
}

}  // namespace

TEST_CASE("f at y = 3 for C(3,-4)") {
    const SlopeSample s = slope_at(kC3m4, 0, 3.0);
    CHECK(s.index == 0);
    CHECK_FALSE(s.index_carried);
    CHECK(s.logM > 0.0);
    CHECK(s.residual < 1e-10);

    // oracle: long double root, L from both the closed form and the longitude word
    const oracle::Knot k{oracle::Fam::OddMinus, 1, 2};
    const oracle::ld x = 5.0L + oracle::dense_scan_offsets(k, 3.0L).back();
    const oracle::ld M = oracle::meridian(x);
    const oracle::ld L1 = oracle::longitude(k, M, 3.0L);
    const oracle::ld L2 = oracle::eval(oracle::longitude_letters(k), M, 3.0L).a;
    CHECK(static_cast<double>(L1) == Approx(static_cast<double>(L2)).epsilon(1e-12));
    const double f_ref = static_cast<double>(-std::log(L1) / std::log(M));
    CHECK(s.f == Approx(f_ref).epsilon(1e-11));
    CHECK(s.f == Approx(2.617214289086911).epsilon(1e-12));
    CHECK(s.x == Approx(static_cast<double>(x)).epsilon(1e-14));
}

TEST_CASE("limits of f on the OddMinus branch") {
    for (int m = 1; m <= 3; ++m)
        for (int n = 2; n <= 3; ++n) {
            const KnotSpec s = KnotSpec::make(Family::OddMinus, m, n);
            const double left = left_endpoint(s);
            const SlopeSample near = slope_at(s, 0, left + 1e-10);
            const SlopeSample far = slope_at(s, 0, 1e12);
            CAPTURE(s.to_string());
            CHECK(near.f > -4.0 * n);
            CHECK(near.f < -4.0 * n + 0.5);
            CHECK(far.f < 4.0 * m);
            CHECK(far.f > 4.0 * m - 0.5);
            CHECK(far.index_carried);
            CHECK(far.index == 0);
            // reducible point: L = 1
            CHECK(std::abs(slope_at(s, 0, 2.0).f) < 1e-9);
        }
}

TEST_CASE("f stays inside (-4n, 4m) with index 0 along the principal branch") {
    for (auto [m, n] : {std::pair{1, 2}, std::pair{2, 2}, std::pair{1, 3}}) {
        const KnotSpec s = KnotSpec::make(Family::OddMinus, m, n);
        for (double y : default_grid(s, left_endpoint(s) + 1e-8, 1e12, 120)) {
            const SlopeSample smp = slope_at(s, 0, y, 0);
            CHECK(smp.f > -4.0 * n);
            CHECK(smp.f < 4.0 * m);
            CHECK(smp.logM > 0.0);
            CHECK(smp.index == 0);
        }
    }
}

TEST_CASE("targets and default branches") {
    const Interval t = target_interval(kC3m4);
    CHECK(t.lo == -8.0);
    CHECK(t.hi == 4.0);
    const Interval te = target_interval(KnotSpec::make(Family::EvenMinus, 2, 3));
    CHECK(te.lo == 0.0);
    CHECK(te.hi == 12.0);
    const Interval tp = target_interval(KnotSpec::make(Family::EvenPlus, 2, 3));
    CHECK(tp.lo == -12.0);
    CHECK(tp.hi == 8.0);
    CHECK(default_branches(kC3m4) == std::vector<int>{0});
    CHECK(default_branches(KnotSpec::make(Family::EvenPlus, 2, 3)) == std::vector<int>{1, 2});
    CHECK(default_branches(KnotSpec::make(Family::EvenMinus, 2, 1)).empty());
}

TEST_CASE("certified interval for C(3,-4)") {
    CertifyOptions opts;
    opts.samples = 200;
    const SlopeCertificate c = certify_interval(kC3m4, {0}, odd_range(kC3m4), opts);
    CHECK(c.attained.lo <= -7.5);
    CHECK(c.attained.hi >= 3.5);
    CHECK(c.attained.lo > -8.0);
    CHECK(c.attained.hi < 4.0);
    CHECK(c.covered_fraction > 0.95);
    CHECK(c.covered_fraction <= 1.0);
    REQUIRE(c.per_branch.size() == 1);
    CHECK(c.per_branch[0].index == 0);
    CHECK(c.per_branch[0].index_constant);
    CHECK_FALSE(c.witnesses.empty());
    for (const Witness& w : c.witnesses) {
        CHECK(w.residual < 1e-9);
        CHECK(w.index == 0);
        CHECK(w.q >= 1);
        CHECK(w.q <= opts.q_max);
        CHECK(std::gcd(w.p, w.q) == 1);
        CHECK(c.attained.contains(static_cast<double>(w.p) / w.q));
        // independent recomputation of the residual
        const SlopeSample s = slope_at(kC3m4, 0, w.y);
        CHECK(std::abs(w.p * s.logM + w.q * s.logL) < 1e-9);
    }
}

TEST_CASE("denser grids give nested attained intervals") {
    Interval prev{0.0, 0.0};
    bool first = true;
    for (int n : {50, 100, 200, 400}) {
        CertifyOptions opts;
        opts.samples = n;
        opts.q_max = 2;
        const SlopeCertificate c = certify_interval(kC3m4, {0}, odd_range(kC3m4), opts);
        if (!first) {
            CHECK(c.attained.lo <= prev.lo + 1e-9);
            CHECK(c.attained.hi >= prev.hi - 1e-9);
        }
        prev = c.attained;
        first = false;
    }
}

TEST_CASE("C(5,-4) covers [-7.5, 7.5]") {
    const KnotSpec s = KnotSpec::make(Family::OddMinus, 2, 2);
    CertifyOptions opts;
    opts.samples = 200;
    opts.q_max = 1;
    const SlopeCertificate c = certify_interval(s, {0}, odd_range(s), opts);
    CHECK(c.attained.lo <= -7.5);
    CHECK(c.attained.hi >= 7.5);
    CHECK(c.per_branch[0].index_constant);
}

TEST_CASE("even families") {
    for (Family f : {Family::EvenPlus, Family::EvenMinus}) {
        const KnotSpec s = KnotSpec::make(f, 2, 3);
        CAPTURE(s.to_string());
        const SlopeSample smp = slope_at(s, 1, 3.0);
        CHECK(smp.logM > 0.0);
        CHECK(smp.index == 0);
        CertifyOptions opts;
        opts.samples = 100;
        opts.q_max = 2;
        const SlopeCertificate c = certify_interval(s, default_branches(s), {2.0 + 1e-6, 1e12}, opts);
        const Interval t = target_interval(s);
        CHECK(c.attained.lo >= t.lo);
        CHECK(c.attained.hi <= t.hi);
        CHECK(c.covered_fraction > 0.3);
        for (const BranchRange& b : c.per_branch) {
            CHECK(b.index == 0);
            CHECK(b.index_constant);
        }
        for (const Witness& w : c.witnesses) CHECK(w.residual < 1e-9);
    }
}

TEST_CASE("is_lo_slope") {
    const Interval r = odd_range(kC3m4);
    const Witness w = is_lo_slope(kC3m4, 1, 1, r, {0});
    CHECK(w.residual < 1e-9);
    CHECK(w.index == 0);
    CHECK(slope_at(kC3m4, 0, w.y).f == Approx(1.0).epsilon(1e-8));

    CHECK(fault_of([&] { is_lo_slope(kC3m4, -9, 1, r, {0}); }) == NumericFault::NotFound);

    const Witness zero = is_lo_slope(kC3m4, 0, 1, r, {0});
    const double M = meridian_from_x(slope_at(kC3m4, 0, zero.y).x);
    CHECK(longitude_closed(kC3m4, M, zero.y) == Approx(1.0).epsilon(1e-9));

    const Witness half = is_lo_slope(kC3m4, -15, 2, r, {0});
    CHECK(slope_at(kC3m4, 0, half.y).f == Approx(-7.5).epsilon(1e-8));

    CHECK_THROWS_AS(is_lo_slope(kC3m4, 1, 0, r, {0}), ParseError);
    CHECK_THROWS_AS(is_lo_slope(kC3m4, 2, 2, r, {0}), ParseError);
}

TEST_CASE("index hypothesis") {
    CHECK(index_condition_holds(5, 0));
    CHECK(index_condition_holds(3, 6));
    CHECK(index_condition_holds(-3, 6));
    CHECK(index_condition_holds(1, -4));
    CHECK_FALSE(index_condition_holds(4, 6));
    CHECK_FALSE(index_condition_holds(0, 2));

    // a synthetic lifted longitude in band 2
    const CoverElement g = cover_mul({{0.0, 0.0}, 2.0 * std::numbers::pi}, lift(Mat2{3.0, 0.0, 0.0, 1.0 / 3.0}));
    const int k = hyperbolic_index(g);
    CHECK(k == 2);
    CHECK(index_condition_holds(2, k));
    CHECK_FALSE(index_condition_holds(3, k));
}

TEST_CASE("asymptotics report") {
    const AsymptoticsReport r = asymptotics_report(KnotSpec::make(Family::OddMinus, 2, 2));
    REQUIRE(r.far_y.size() == 3);
    CHECK(r.far_y[2] == 1e6);
    CHECK(std::abs(r.delta_hat[2] - 1.0) < 0.01);
    CHECK(std::abs(r.delta_hat[2] - 1.0) < std::abs(r.delta_hat[0] - 1.0));
    REQUIRE(r.near_delta.size() == 3);
    for (std::size_t i = 0; i < r.near_delta.size(); ++i)
        if (r.near_delta[i] <= 1e-6) CHECK(r.near_x[i] > 1e3);
    for (std::size_t i = 1; i < r.near_x.size(); ++i) CHECK(r.near_x[i] > r.near_x[i - 1]);
    CHECK(r.min_x > 4.0);
    CHECK_THROWS_AS(asymptotics_report(KnotSpec::make(Family::EvenPlus, 2, 2)), ParseError);
}
