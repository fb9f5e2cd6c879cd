#pragma once

#include "orderable/knot.hpp"
#include "orderable/rootcurve.hpp"

namespace orderable {

/// Representation checks redone in MPFR arithmetic at a root of R(., y)
/// refined from a double seed. In double the longitude word loses all
/// accuracy once its entries outgrow L by ~1e16, which happens at moderate
/// y; here the working precision scales with the word.
struct PreciseRep {
    unsigned bits = 0;              // working precision
    double y = 0.0;
    double offset = 0.0;            // refined root offset x - (y + 2)
    double x = 0.0;
    double refine_shift = 0.0;      // |refined - seed| / max(|seed|, tiny)
    double relation_residual = 0.0; // max |rho(a w^p) - rho(w^p b)| / max(1, max |rho(a w^p)|)
    double relation_abs = 0.0;      // max |rho(a w^p) - rho(w^p b)|
    double lower_left = 0.0;        // |rho(lambda)_21| / max(1, max |rho(lambda)|)
    double lower_left_abs = 0.0;    // |rho(lambda)_21|
    double L_word = 0.0;
    double L_closed = 0.0;
    double L_rel_diff = 0.0;        // |L_word - L_closed| / |L_closed|, in working precision
    double trace = 0.0;             // of rho(lambda)
    int index = 0;                  // band of the lifted longitude
};

/// bits = 0 picks the precision from the word length and the size of M and y,
/// doubling it until rho(lambda) is upper triangular to 1e-30. Throws
/// NumericError Elliptic when x < 4, NotFound when no sign change brackets
/// the seed, NotHyperbolic when |trace rho(lambda)| < 2.
PreciseRep precise_rep(const KnotSpec& spec, double y, double offset_seed, unsigned bits = 0);

/// Offset x - (y + 2) of a principal point without cancellation: u + 1/(GH).
double principal_offset(const PrincipalPoint& pt);

}  // namespace orderable
