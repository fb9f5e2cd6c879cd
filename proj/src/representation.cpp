#include "orderable/representation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orderable/chebyshev.hpp"
#include "orderable/error.hpp"
#include "orderable/riley.hpp"

namespace orderable {

double Mat2::max_abs() const { return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}); }

Mat2 operator*(const Mat2& l, const Mat2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
}

Mat2 operator-(const Mat2& l, const Mat2& r) { return {l.a - r.a, l.b - r.b, l.c - r.c, l.d - r.d}; }

double meridian_from_x(double x) {
    if (!(x >= 4.0))
        throw NumericError(NumericFault::Elliptic, "meridian_from_x: x = " + std::to_string(x) + " < 4");
    return 0.5 * (std::sqrt(x) + std::sqrt(x - 4.0));
}

std::pair<Mat2, Mat2> build_rep(double M, double y) {
    const Mat2 ra{M, 1.0, 0.0, 1.0 / M};
    const Mat2 rb{M, 0.0, 2.0 - y, 1.0 / M};
    return {ra, rb};
}

Mat2 eval_word(const Word& word, const Mat2& rho_a, const Mat2& rho_b) {
    const Mat2 inv_a = rho_a.inverse_unimodular();
    const Mat2 inv_b = rho_b.inverse_unimodular();
    Mat2 acc = Mat2::identity();
    int count = 0;
    for (const Letter& l : word.letters()) {
        const Mat2& g = l.gen == 'a' ? (l.exp > 0 ? rho_a : inv_a) : (l.exp > 0 ? rho_b : inv_b);
        for (int i = 0; i < std::abs(l.exp); ++i) {
            acc = acc * g;
            if (++count > 50) {
                const double det = acc.det();
                if (det > 0.0) {
                    const double s = 1.0 / std::sqrt(det);
                    acc = {acc.a * s, acc.b * s, acc.c * s, acc.d * s};
                }
            }
        }
    }
    return acc;
}

double relation_residual(const KnotSpec& spec, double M, double y) {
    const auto [ra, rb] = build_rep(M, y);
    const Mat2 wp = eval_word(word_w_power(spec), ra, rb);
    const Mat2 lhs = ra * wp;
    const Mat2 rhs = wp * rb;
    return (lhs - rhs).max_abs() / std::max(1.0, lhs.max_abs());
}

double longitude_closed(const KnotSpec& spec, double M, double y) {
    const TraceData td = trace_data(spec.m, y);
    double num = 0.0, den = 0.0, factor = 1.0;
    if (spec.even()) {
        const double d0 = td.D;
        const double d1 = y > kLargeTrace ? td.H - td.Hm : cheb_diff(spec.m - 1, y);
        num = d0 / M - M * d1;
        den = M * d0 - d1 / M;
    } else {
        num = td.G / M - M * td.H;
        den = M * td.G - td.H / M;
        factor = std::pow(M, 4 * spec.p);
    }
    if (den == 0.0 || !std::isfinite(den))
        throw NumericError(NumericFault::SingularDenominator, "longitude_closed: vanishing denominator", y);
    return -factor * num / den;
}

double longitude_word(const KnotSpec& spec, double M, double y, double tol) {
    const auto [ra, rb] = build_rep(M, y);
    const Mat2 lam = eval_word(word_longitude(spec), ra, rb);
    const double rel = std::abs(lam.c) / std::max(1.0, lam.max_abs());
    if (!(rel <= tol))
        throw NumericError(NumericFault::NotUpperTriangular,
                           "rho(lambda) lower-left entry " + std::to_string(rel) + " exceeds tolerance", y);
    return lam.a;
}

namespace {

// c with (base + c) + 1/(base + c) = base + 1/base + off and base + c >= 1.
double shift_solve(double base, double off) {
    const double a = base;
    const double b = base * base - 1.0 - off * base;
    const double disc = b * b + 4.0 * off * base * base * base;
    if (disc < 0.0) throw NumericError(NumericFault::Elliptic, "no real meridian eigenvalue");
    const double sq = std::sqrt(disc);
    return b >= 0.0 ? 2.0 * off * base * base / (b + sq) : (-b + sq) / (2.0 * a);
}

double checked_log(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw NumericError(NumericFault::NotHyperbolic, std::string(what) + " is not positive");
    return std::log(v);
}

}  // namespace

PeripheralLogs peripheral_logs_odd(const KnotSpec& spec, const PrincipalPoint& pt) {
    const double r = pt.r;
    const double d = shift_solve(r, pt.u);  // M^2 - G/H
    PeripheralLogs out;
    out.logM = 0.5 * std::log(r + d);
    const double denom = (r - 1.0) * (r + 1.0) + r * d;  // M^2 G/H - 1
    out.logL = 4.0 * spec.p * out.logM + checked_log(d, "M^2 - G/H") - checked_log(denom, "M^2 G/H - 1");
    return out;
}

PeripheralLogs peripheral_logs_even(const KnotSpec& spec, double y, double offset) {
    if (!(y + offset >= 2.0))
        throw NumericError(NumericFault::Elliptic, "x < 4 on this branch", y);
    const double xi = xi_from_trace(y);
    const double lx = std::log(xi);
    const int m = spec.m;
    // xi - D_m / D_{m-1}
    const double gap = std::exp((2.0 - 2.0 * m) * lx) * (-std::expm1(-2.0 * lx)) / (1.0 + std::exp((1.0 - 2.0 * m) * lx));
    const double c = shift_solve(xi, offset);  // M^2 - xi
    PeripheralLogs out;
    out.logM = 0.5 * std::log(xi + c);
    const double num = c + gap;                      // M^2 - rho
    const double den = (xi + c) * (xi - gap) - 1.0;  // M^2 rho - 1
    out.logL = checked_log(num, "M^2 - rho") - checked_log(den, "M^2 rho - 1");
    return out;
}

PeripheralLogs peripheral_logs_direct(const KnotSpec& spec, double x, double y) {
    const double M = meridian_from_x(x);
    PeripheralLogs out;
    out.logM = std::log(M);
    if (spec.even()) {
        out.logL = checked_log(longitude_closed(spec, M, y), "L");
    } else {
        const TraceData td = trace_data(spec.m, y);
        const double q = -(td.G / M - M * td.H) / (M * td.G - td.H / M);
        out.logL = 4.0 * spec.p * out.logM + checked_log(q, "L / M^{4p}");
    }
    return out;
}

RepSample rep_sample(const KnotSpec& spec, double x, double y) {
    RepSample s;
    s.spec = spec;
    s.y = y;
    s.x = x;
    s.M = meridian_from_x(x);
    std::tie(s.rho_a, s.rho_b) = build_rep(s.M, y);
    s.relation_residual = relation_residual(spec, s.M, y);
    const Mat2 lam = eval_word(word_longitude(spec), s.rho_a, s.rho_b);
    s.lower_left = std::abs(lam.c) / std::max(1.0, lam.max_abs());
    s.L_word = lam.a;
    s.L_closed = longitude_closed(spec, s.M, y);
    s.reducible = s.rho_b.c == 0.0;
    return s;
}

}  // namespace orderable
