#pragma once

#include <utility>

#include "orderable/knot.hpp"
#include "orderable/rootcurve.hpp"

namespace orderable {

/// Real 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static Mat2 identity() { return {}; }

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    /// Inverse assuming det = 1.
    Mat2 inverse_unimodular() const { return {d, -b, -c, a}; }
    double max_abs() const;
};

Mat2 operator*(const Mat2& lhs, const Mat2& rhs);
Mat2 operator-(const Mat2& lhs, const Mat2& rhs);

/// M >= 1 with M + 1/M = sqrt(x). Throws NumericError(Elliptic) for x < 4.
double meridian_from_x(double x);

/// rho(a) = [[M, 1], [0, 1/M]], rho(b) = [[M, 0], [2 - y, 1/M]].
std::pair<Mat2, Mat2> build_rep(double M, double y);

/// Left-to-right product of generator images. Past 50 letters each step is
/// rescaled by 1/sqrt(det) to hold the determinant at 1.
Mat2 eval_word(const Word& word, const Mat2& rho_a, const Mat2& rho_b);

/// max |rho(a w^p) - rho(w^p b)| divided by max(1, max |rho(a w^p)|).
double relation_residual(const KnotSpec& spec, double M, double y);

/// Closed-form longitude eigenvalue L.
double longitude_closed(const KnotSpec& spec, double M, double y);

/// Upper-left entry of rho(lambda). Throws NotUpperTriangular when the
/// lower-left entry exceeds tol relative to max(1, max |rho(lambda)|).
double longitude_word(const KnotSpec& spec, double M, double y, double tol = 1e-9);

/// log M and log L, assembled without forming M^{4p} or differences of nearly equal numbers.
struct PeripheralLogs {
    double logM = 0.0;
    double logL = 0.0;
};

/// OddMinus principal branch: M^2 = r + d with d solved from the offset u.
PeripheralLogs peripheral_logs_odd(const KnotSpec& spec, const PrincipalPoint& pt);

/// Even families at offset e = x - y - 2 (y > 2), using xi with y = xi + 1/xi.
PeripheralLogs peripheral_logs_even(const KnotSpec& spec, double y, double offset);

/// Generic path: M from x, L from longitude_closed (in logs for the M^{4p} factor).
PeripheralLogs peripheral_logs_direct(const KnotSpec& spec, double x, double y);

struct RepSample {
    KnotSpec spec;
    double y = 0.0;
    double x = 0.0;
    double M = 1.0;
    Mat2 rho_a;
    Mat2 rho_b;
    double relation_residual = 0.0;
    double lower_left = 0.0;  // of rho(lambda), relative
    double L_closed = 0.0;
    double L_word = 0.0;
    bool reducible = false;  // lower-left entry of rho(b) is exactly zero
};

RepSample rep_sample(const KnotSpec& spec, double x, double y);

}  // namespace orderable
