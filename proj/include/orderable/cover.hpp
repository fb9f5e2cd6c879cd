#pragma once

#include <complex>
#include <optional>

#include "orderable/knot.hpp"
#include "orderable/representation.hpp"

namespace orderable {

/// Element (gamma, omega) of the universal cover of SL(2,R), |gamma| < 1.
struct CoverElement {
    std::complex<double> gamma{0.0, 0.0};
    double omega = 0.0;
};

/// (g, w)(g', w') = ((g + g' e^{-2iw}) / (1 + conj(g) g' e^{-2iw}), w + w' + arg(1 + conj(g) g' e^{-2iw})).
CoverElement cover_mul(const CoverElement& g, const CoverElement& h);

CoverElement cover_inv(const CoverElement& g);

/// Branch-n preimage of A: ((a-d+(b+c)i)/(a+d+(b-c)i), arg(a+d+(b-c)i) + 2n pi).
CoverElement lift(const Mat2& A, int branch_n = 0);

/// Covering map back to SL(2,R).
Mat2 project(const CoverElement& g);

/// The k with k pi - pi/2 < omega < k pi + pi/2. Throws AmbiguousIndex within
/// 1e-9 of a band boundary.
int band_index(double omega);

/// band_index of a hyperbolic element; throws NotHyperbolic if |trace| <= 2.
int hyperbolic_index(const CoverElement& g);

/// Product of branch-0 letter lifts along the longitude word.
CoverElement lift_longitude(const KnotSpec& spec, double M, double y);

/// Index of the representation (M, y): band index of the lifted longitude.
/// rho(lambda) must be hyperbolic or on its parabolic boundary (trace 2 at
/// the reducible point); anything with |trace| < 2 is rejected.
int rep_index(const KnotSpec& spec, double M, double y);

/// rep_index in double, or nullopt when |trace rho(lambda)| misses |expected_trace|
/// by more than rel_tol (the word has lost its accuracy) or the band is unclear.
std::optional<int> rep_index_checked(const KnotSpec& spec, double M, double y, double expected_trace,
                                     double rel_tol = 1e-6);

}  // namespace orderable
