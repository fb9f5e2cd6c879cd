#include "orderable/precise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "orderable/cover.hpp"
#include "orderable/error.hpp"
#include "orderable/representation.hpp"

namespace orderable {

namespace {

namespace mp = boost::multiprecision;
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

struct MatR {
    Real a, b, c, d;
};

MatR operator*(const MatR& l, const MatR& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
}

Real max_abs(const MatR& m) { return std::max({abs(m.a), abs(m.b), abs(m.c), abs(m.d)}); }

Real cheb(int j, const Real& v) {
    if (j >= 0) {
        Real prev = 0, cur = 1;
        for (int i = 1; i <= j; ++i) {
            Real next = v * cur - prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    Real next = 1, cur = 0;
    for (int i = -1; i > j; --i) {
        Real lower = v * cur - next;
        next = cur;
        cur = lower;
    }
    return cur;
}

struct Slice {
    const KnotSpec& spec;
    Real y, G, H, Hm;

    Slice(const KnotSpec& s, double yv) : spec(s), y(yv) {
        G = cheb(s.m, y);
        H = cheb(s.m - 1, y);
        Hm = cheb(s.m - 2, y);
    }

    // R in the offset e = x - (y + 2)
    Real riley(const Real& e) const {
        Real t, z;
        if (spec.even()) {
            t = 2 - e * (y - 2) * H * H;
            z = 1 - e * H * (G - H);
        } else {
            t = 2 + e * (G - H) * (G - H);
            z = 1 + e * G * (G - H);
        }
        return cheb(spec.p, t) - z * cheb(spec.p - 1, t);
    }

    Real longitude(const Real& M) const {
        if (spec.even()) {
            const Real d0 = G - H, d1 = H - Hm;
            return -(d0 / M - M * d1) / (M * d0 - d1 / M);
        }
        return -pow(M, 4 * spec.p) * (G / M - M * H) / (M * G - H / M);
    }
};

// Illinois iteration on a sign-changing bracket down to a relative width of 2^-(bits - 8).
Real refine(const Slice& sl, Real a, Real b, unsigned bits) {
    Real fa = sl.riley(a), fb = sl.riley(b);
    const Real tol = ldexp(Real(1), -static_cast<int>(bits) + 8);
    int side = 0;
    for (int it = 0; it < 20 * static_cast<int>(bits); ++it) {
        const Real width = abs(b - a);
        if (width <= tol * std::max(abs(a), abs(b))) break;
        Real c = (a * fb - b * fa) / (fb - fa);
        if (!(c > std::min(a, b) && c < std::max(a, b))) c = (a + b) / 2;
        const Real fc = sl.riley(c);
        if (fc == 0) return c;
        if ((fc < 0) == (fb < 0)) {
            b = c;
            fb = fc;
            if (side == -1) fa /= 2;
            side = -1;
        } else {
            a = c;
            fa = fc;
            if (side == 1) fb /= 2;
            side = 1;
        }
    }
    return (a + b) / 2;
}

double wrap_pi(double v) { return std::remainder(v, 2.0 * std::numbers::pi); }

double arg_near(const MatR& A, double guess) {
    const double re = static_cast<double>(A.a + A.d), im = static_cast<double>(A.b - A.c);
    return guess + wrap_pi(std::atan2(im, re) - guess);
}

unsigned auto_bits(const KnotSpec& spec, double M, double y) {
    const double grow = std::log2(std::max({M, std::abs(y - 2.0), 2.0}));
    const int letters = word_longitude(spec).length() + word_w_power(spec).length();
    return 128u + static_cast<unsigned>(2.0 * letters * grow);
}

PreciseRep evaluate(const KnotSpec& spec, double y, double seed, unsigned bits) {
    Real::default_precision(mp::detail::digits2_2_10(bits));
    const Slice sl(spec, y);

    // bracket the seed, widening until the sign changes
    const Real e0 = seed;
    Real h = std::max(std::abs(seed) * 1e-12, 1e-300);
    Real lo = e0 - h, hi = e0 + h;
    while ((sl.riley(lo) < 0) == (sl.riley(hi) < 0)) {
        h *= 8;
        if (h > abs(e0) / 2)
            throw NumericError(NumericFault::NotFound, "precise_rep: no sign change around the seed offset", y);
        lo = e0 - h;
        hi = e0 + h;
    }
    const Real e = refine(sl, lo, hi, bits);
    const Real x = sl.y + 2 + e;
    if (x < 4) throw NumericError(NumericFault::Elliptic, "precise_rep: x < 4", y);
    const Real sx = sqrt(x);
    const Real M = (sx + sqrt(x - 4)) / 2;

    const MatR ra{M, 1, 0, 1 / M}, rb{M, 0, 2 - sl.y, 1 / M};
    const MatR ia{1 / M, -1, 0, M}, ib{1 / M, 0, sl.y - 2, M};
    auto eval = [&](const Word& w) {
        MatR acc{1, 0, 0, 1};
        for (const Letter& l : w.letters()) {
            const MatR& g = l.gen == 'a' ? (l.exp > 0 ? ra : ia) : (l.exp > 0 ? rb : ib);
            for (int i = 0; i < std::abs(l.exp); ++i) acc = acc * g;
        }
        return acc;
    };

    PreciseRep out;
    out.bits = bits;
    out.y = y;
    out.offset = static_cast<double>(e);
    out.x = static_cast<double>(x);
    out.refine_shift = static_cast<double>(abs(e - e0) / std::max(abs(e0), Real(1e-300)));

    const MatR wp = eval(word_w_power(spec));
    const MatR lhs = ra * wp, rhs = wp * rb;
    const MatR diff{lhs.a - rhs.a, lhs.b - rhs.b, lhs.c - rhs.c, lhs.d - rhs.d};
    out.relation_abs = static_cast<double>(max_abs(diff));
    out.relation_residual = static_cast<double>(max_abs(diff) / std::max(Real(1), max_abs(lhs)));

    // longitude, tracking omega of the lift letter by letter
    const Mat2 da{static_cast<double>(M), 1.0, 0.0, static_cast<double>(1 / M)};
    const Mat2 db{static_cast<double>(M), 0.0, 2.0 - y, static_cast<double>(1 / M)};
    const double wa = lift(da).omega, wb = lift(db).omega;
    const double wia = lift(da.inverse_unimodular()).omega, wib = lift(db.inverse_unimodular()).omega;
    const Word lambda = word_longitude(spec);
    MatR acc{1, 0, 0, 1};
    double omega = 0.0, comp = 0.0;
    auto add = [&](double v) {
        const double t = v - comp, s = omega + t;
        comp = (s - omega) - t;
        omega = s;
    };
    for (const Letter& l : lambda.letters()) {
        const bool is_a = l.gen == 'a';
        const MatR& g = is_a ? (l.exp > 0 ? ra : ia) : (l.exp > 0 ? rb : ib);
        const double wg = is_a ? (l.exp > 0 ? wa : wia) : (l.exp > 0 ? wb : wib);
        for (int i = 0; i < std::abs(l.exp); ++i) {
            acc = acc * g;
            const double guess = (omega - comp) + wg;
            add(wg);
            add(arg_near(acc, guess) - guess);
        }
    }
    omega -= comp;

    const Real big = std::max(Real(1), max_abs(acc));
    out.lower_left_abs = static_cast<double>(abs(acc.c));
    out.lower_left = static_cast<double>(abs(acc.c) / big);
    const Real Lc = sl.longitude(M);
    out.L_word = static_cast<double>(acc.a);
    out.L_closed = static_cast<double>(Lc);
    out.L_rel_diff = static_cast<double>(abs(acc.a - Lc) / abs(Lc));
    const Real tr = acc.a + acc.d;
    out.trace = static_cast<double>(tr);
    if (!(abs(tr) >= 2 * (1 - Real(1e-9))))
        throw NumericError(NumericFault::NotHyperbolic,
                           "precise_rep: rho(lambda) has trace " + std::to_string(out.trace), y);

    // balance the off-diagonal entries by a positive diagonal conjugation (same band)
    const Real ab = abs(acc.b), ac = abs(acc.c);
    Real s2 = 1;
    if (ab > 0 && ac > 0) s2 = sqrt(ac / ab);
    else if (ab > 0) s2 = abs(tr) / ab;
    else if (ac > 0) s2 = ac / abs(tr);
    const Real s = sqrt(s2);
    const MatR D{s, 0, 0, 1 / s}, Dinv{1 / s, 0, 0, s};
    const MatR DA = D * acc;
    const double w1 = arg_near(DA, omega);
    out.index = band_index(arg_near(DA * Dinv, w1));
    return out;
}

}  // namespace

PreciseRep precise_rep(const KnotSpec& spec, double y, double offset_seed, unsigned bits) {
    if (!(offset_seed != 0.0) || !std::isfinite(offset_seed))
        throw std::invalid_argument("precise_rep: seed offset must be finite and nonzero");
    if (bits != 0) return evaluate(spec, y, offset_seed, bits);
    const double x = y + 2.0 + offset_seed;
    const double M = x >= 4.0 ? meridian_from_x(x) : 1.0;
    unsigned b = auto_bits(spec, M, y);
    PreciseRep r = evaluate(spec, y, offset_seed, b);
    for (int i = 0; i < 3 && !(r.lower_left < 1e-30); ++i) {
        b *= 2;
        r = evaluate(spec, y, offset_seed, b);
    }
    return r;
}

double principal_offset(const PrincipalPoint& pt) {
    const double e = pt.u + 1.0 / (pt.G * pt.H);
    return std::isfinite(e) ? e : pt.x - pt.y - 2.0;
}

}  // namespace orderable
