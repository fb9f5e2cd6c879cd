#pragma once

#include <optional>
#include <vector>

#include "orderable/knot.hpp"
#include "orderable/rootcurve.hpp"

namespace orderable {

/// Largest y at which the index is evaluated in the cover; beyond it the
/// index of the branch is carried over (it is constant along a branch).
inline constexpr double kIndexMaxY = 1e3;

struct SlopeSample {
    double y = 0.0;
    double x = 0.0;
    double logM = 0.0;
    double logL = 0.0;
    double f = 0.0;  // -logL / logM
    int index = 0;
    bool index_carried = false;
    double residual = 0.0;  // scaled Riley residual of x
};

/// Branch-0 of OddMinus goes through the shifted principal solve, even
/// branches through the offset roots; anything else uses x directly.
/// `carried` supplies the index when y > kIndexMaxY; without it the index is
/// computed at a reference point on the same branch.
SlopeSample slope_at(const KnotSpec& spec, int branch, double y, std::optional<int> carried = std::nullopt,
                     double tol = kDefaultRootTol);

/// Index of the branch at the reference point y = 3.
int branch_index(const KnotSpec& spec, int branch);

/// Branches swept by default: 0 for OddMinus, 1..n-1 for the even families.
std::vector<int> default_branches(const KnotSpec& spec);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    bool contains(double v) const { return lo <= v && v <= hi; }
};

/// Open target interval of slopes: (-4n, 4m) for OddMinus and EvenPlus,
/// [0, max(4m, 4n)) for EvenMinus.
Interval target_interval(const KnotSpec& spec);

struct Witness {
    int p = 0;
    int q = 1;
    double y = 0.0;
    double residual = 0.0;  // |p logM + q logL|
    int index = 0;
    int branch = 0;
};

struct BranchRange {
    int branch = 0;
    std::vector<Interval> y_segments;  // connected y-ranges of hyperbolic samples
    std::vector<Interval> f_ranges;    // f range attained on each segment
    int index = 0;
    bool index_constant = true;  // every desk-scale sample had the same index
    int samples = 0;
    int refinements = 0;
};

struct CertifyOptions {
    int samples = 400;
    int q_max = 16;
    double tol = kDefaultRootTol;
    double jump_gate = 0.1;  // max |df| between adjacent accepted samples
    int max_refine = 24;
};

struct SlopeCertificate {
    KnotSpec spec;
    std::vector<int> branches;
    Interval y_range;
    std::vector<BranchRange> per_branch;
    Interval attained;  // largest connected piece of the union of f ranges
    Interval target;
    double covered_fraction = 0.0;
    std::vector<Witness> witnesses;
};

/// f on the grid with midpoints inserted until adjacent samples differ by at
/// most the jump gate. Samples where the branch is not hyperbolic split the
/// sweep into segments. Throws BranchDiscontinuity when refinement stops
/// shrinking a jump.
std::vector<std::vector<SlopeSample>> sweep_branch(const KnotSpec& spec, int branch, double y_min, double y_max,
                                                   const CertifyOptions& opts, int* refinements = nullptr);

SlopeCertificate certify_interval(const KnotSpec& spec, const std::vector<int>& branches, Interval y_range,
                                  const CertifyOptions& opts = {});

/// Index hypothesis of the surgery criterion: k = 0, or p divides k.
bool index_condition_holds(int p, int k);

/// Witness y with p logM + q logL = 0 on one of `branches`. Throws
/// NumericError NotFound when no sign change exists in y_range and
/// IndexConditionFailed when the witness index fails the hypothesis.
Witness is_lo_slope(const KnotSpec& spec, int p, int q, Interval y_range, const std::vector<int>& branches,
                    const CertifyOptions& opts = {});

struct AsymptoticsReport {
    KnotSpec spec;
    std::vector<double> far_y;
    std::vector<double> delta_hat;  // xi^{2m+2n-2} (x - 2 - G/H - H/G)
    std::vector<double> near_delta;  // y - left endpoint
    std::vector<double> near_x;
    double min_x = 0.0;  // over a default grid
    double min_x_y = 0.0;
};

AsymptoticsReport asymptotics_report(const KnotSpec& spec);

}  // namespace orderable
