#include "orderable/cover.hpp"

#include <cmath>
#include <optional>
#include <numbers>
#include <string>

#include "orderable/error.hpp"

namespace orderable {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kBandMargin = 1e-9;

cplx phase_factor(double omega) {
    // e^{-2 i omega} has period pi in omega
    return std::polar(1.0, -2.0 * std::remainder(omega, kPi));
}

cplx clamp_disc(cplx g) {
    const double r = std::abs(g);
    if (r < 1.0) return g;
    return g * (std::nextafter(1.0, 0.0) / r);
}

// Kahan-compensated running sum
class CompensatedSum {
public:
    void add(double v) {
        const double yv = v - comp_;
        const double t = sum_ + yv;
        comp_ = (t - sum_) - yv;
        sum_ = t;
    }
    double value() const { return sum_ - comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double wrap_pi(double a) { return std::remainder(a, 2.0 * kPi); }

}  // namespace

CoverElement cover_mul(const CoverElement& g, const CoverElement& h) {
    const cplx e = phase_factor(g.omega);
    const cplx den = 1.0 + std::conj(g.gamma) * h.gamma * e;
    return {clamp_disc((g.gamma + h.gamma * e) / den), g.omega + h.omega + std::arg(den)};
}

CoverElement cover_inv(const CoverElement& g) {
    return {-g.gamma * std::conj(phase_factor(g.omega)), -g.omega};
}

CoverElement lift(const Mat2& A, int branch_n) {
    const cplx zeta(A.a + A.d, A.b - A.c);
    if (std::abs(zeta) == 0.0)
        throw NumericError(NumericFault::SingularDenominator, "lift: a + d + (b - c)i vanishes");
    const cplx num(A.a - A.d, A.b + A.c);
    return {clamp_disc(num / zeta), std::arg(zeta) + 2.0 * kPi * branch_n};
}

Mat2 project(const CoverElement& g) {
    const double mod = std::abs(g.gamma);
    const double scale = 2.0 / std::sqrt((1.0 - mod) * (1.0 + mod));
    const cplx zeta = std::polar(scale, std::remainder(g.omega, 2.0 * kPi));
    const cplx gz = g.gamma * zeta;
    return {0.5 * (zeta.real() + gz.real()), 0.5 * (zeta.imag() + gz.imag()), 0.5 * (gz.imag() - zeta.imag()),
            0.5 * (zeta.real() - gz.real())};
}

int band_index(double omega) {
    const double k = std::round(omega / kPi);
    const double dist = std::abs(omega - k * kPi);
    if (kPi / 2.0 - dist < kBandMargin)
        throw NumericError(NumericFault::AmbiguousIndex,
                           "omega = " + std::to_string(omega) + " lies on a band boundary");
    return static_cast<int>(k);
}

int hyperbolic_index(const CoverElement& g) {
    const double tr = project(g).trace();
    if (!(std::abs(tr) > 2.0))
        throw NumericError(NumericFault::NotHyperbolic, "trace " + std::to_string(tr) + " is not hyperbolic");
    return band_index(g.omega);
}

namespace {

struct Tracked {
    Mat2 matrix;
    double omega = 0.0;
};

// Representative of arg(a + d + (b - c)i) of A nearest to guess. Valid whenever the true
// lift is within pi/2 of guess, which holds for one cover multiplication step since
// arg(1 + conj(g) g' e^{-2iw}) lies in (-pi/2, pi/2).
double nearest_arg(const Mat2& A, double guess) {
    return guess + wrap_pi(std::atan2(A.b - A.c, A.a + A.d) - guess);
}

// The product (g, w)(g', w') has omega'' = w + w' + arg(1 + conj(g) g' e^{-2iw}), so
// omega'' is the representative of arg(a + d + (b - c)i) of the product matrix closest
// to w + w'. Tracking the matrix keeps this exact where gamma itself has rounded onto
// the unit circle.
Tracked track_longitude(const KnotSpec& spec, double M, double y) {
    const auto [ra, rb] = build_rep(M, y);
    const Mat2 ia = ra.inverse_unimodular(), ib = rb.inverse_unimodular();
    const double wa = lift(ra).omega, wb = lift(rb).omega, wia = lift(ia).omega, wib = lift(ib).omega;
    const Word lambda = word_longitude(spec);
    Mat2 acc = Mat2::identity();
    CompensatedSum omega;
    for (const Letter& l : lambda.letters()) {
        const bool is_a = l.gen == 'a';
        const Mat2& g = is_a ? (l.exp > 0 ? ra : ia) : (l.exp > 0 ? rb : ib);
        const double wg = is_a ? (l.exp > 0 ? wa : wia) : (l.exp > 0 ? wb : wib);
        for (int i = 0; i < std::abs(l.exp); ++i) {
            acc = acc * g;
            const double det = acc.det();
            if (det > 0.0) {
                const double s = 1.0 / std::sqrt(det);
                acc = {acc.a * s, acc.b * s, acc.c * s, acc.d * s};
            }
            const double guess = omega.value() + wg;
            omega.add(wg);
            omega.add(nearest_arg(acc, guess) - guess);
        }
    }
    return {acc, omega.value()};
}

}  // namespace

CoverElement lift_longitude(const KnotSpec& spec, double M, double y) {
    const Tracked t = track_longitude(spec, M, y);
    CoverElement out = lift(t.matrix);
    out.omega = t.omega;
    return out;
}

// rho(lambda) is nearly upper triangular with a large corner entry, which puts its
// omega close to a band boundary. Conjugating by D = diag(s, 1/s) (lift (gamma, 0))
// preserves the band; with |b'| = |c'| we get |b' - c'| <= sqrt(tr^2 + 4) and omega
// lands within atan(sqrt 2) of k pi.
namespace {

int balanced_index(const Tracked& t, double y) {
    const Mat2& A = t.matrix;
    const double tr = A.trace();
    if (!(std::abs(tr) >= 2.0 * (1.0 - 1e-9)))
        throw NumericError(NumericFault::NotHyperbolic,
                           "rho(lambda) has trace " + std::to_string(tr) + "; not hyperbolic", y);
    const double ab = std::abs(A.b), ac = std::abs(A.c);
    double s2 = 1.0;
    if (ab > 0.0 && ac > 0.0) s2 = std::sqrt(ac / ab);
    else if (ab > 0.0) s2 = std::abs(tr) / ab;
    else if (ac > 0.0) s2 = ac / std::abs(tr);
    const double s = std::sqrt(s2);
    const Mat2 D{s, 0.0, 0.0, 1.0 / s}, Dinv{1.0 / s, 0.0, 0.0, s};
    const Mat2 DA = D * A;
    const double w1 = nearest_arg(DA, t.omega);
    const double w2 = nearest_arg(DA * Dinv, w1);
    return band_index(w2);
}

}  // namespace

int rep_index(const KnotSpec& spec, double M, double y) { return balanced_index(track_longitude(spec, M, y), y); }

std::optional<int> rep_index_checked(const KnotSpec& spec, double M, double y, double expected_trace, double rel_tol) {
    const Tracked t = track_longitude(spec, M, y);
    const double tr = t.matrix.trace();
    if (!std::isfinite(tr) || !(std::abs(std::abs(tr) - std::abs(expected_trace)) <= rel_tol * std::abs(expected_trace)))
        return std::nullopt;
    try {
        return balanced_index(t, y);
    } catch (const NumericError&) {
        return std::nullopt;
    }
}

}  // namespace orderable
