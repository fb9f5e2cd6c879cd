#pragma once

#include <span>
#include <vector>

#include "orderable/knot.hpp"
#include "orderable/riley.hpp"

namespace orderable {

/// Lower end of the y-range where the root families exist: 2 for the even
/// families, 2cos(pi/(2m+1)) for OddMinus. The range itself is open at this point.
double left_endpoint(const KnotSpec& spec);

bool admissible(const KnotSpec& spec, double y);

/// Bracket points s_1..s_n (x-coordinates). Even: s_n > ... > s_1 > y+2.
/// Odd: s_n < ... < s_1 < y+2.
std::vector<double> brackets(const KnotSpec& spec, double y);

/// Same points as offsets s_j - (y + 2).
std::vector<double> bracket_offsets(const KnotSpec& spec, double y);

/// All n real roots of R(., y), indexed by branch j = 0..n-1 (x_j in the
/// standard root numbering). Ascending for the even
/// families, descending for OddMinus.
struct RootCurveSample {
    double y = 0.0;
    std::vector<double> roots;
    std::vector<double> offsets;  // roots[j] - (y + 2), computed directly
    std::vector<double> brackets;
    std::vector<double> residuals;  // |R| / max(1, |lead| |x|^n)
};

inline constexpr double kDefaultRootTol = 1e-10;

RootCurveSample roots_at(const KnotSpec& spec, double y, double tol = kDefaultRootTol);

/// |R(x, y)| / max(1, |lead| |x|^n)
double scaled_residual(const RileySlice& slice, double x);

struct BranchSample {
    double y = 0.0;
    double x = 0.0;
    double offset = 0.0;
    double residual = 0.0;
};

struct TraceOptions {
    double tol = kDefaultRootTol;
    double slope_factor = 4.0;  // continuity constant C = factor * neighbouring slope
    int max_refine = 16;        // bisection depth per grid interval
};

/// Root of branch j on a monotone y-grid, with midpoints inserted where the
/// continuity gate |dx| <= C dy fails.
std::vector<BranchSample> trace_branch(const KnotSpec& spec, int branch, std::span<const double> y_grid,
                                       const TraceOptions& opts = {});

/// Principal OddMinus root x(y) > y + 2, solved in the shifted variable
/// u = x - 2 - G/H - H/G (scaled by xi^{2m+2n-2} once y > 2).
struct PrincipalPoint {
    double y = 0.0;
    double x = 0.0;
    double u = 0.0;
    double delta_hat = 0.0;  // xi^{2m+2n-2} u for y > 2, NaN otherwise
    double G = 1.0;
    double H = 1.0;
    double D = 0.0;  // G - H
    double r = 1.0;  // G / H
    double residual = 0.0;
};

PrincipalPoint principal_branch_odd(const KnotSpec& spec, double y, double tol = kDefaultRootTol);

/// Deterministic grid on [y_min, y_max]: logarithmic in (y - left endpoint)
/// up to left + 1, then logarithmic in y.
std::vector<double> default_grid(const KnotSpec& spec, double y_min, double y_max, int samples);

}  // namespace orderable
