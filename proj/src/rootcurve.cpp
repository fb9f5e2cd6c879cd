#include "orderable/rootcurve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "orderable/chebyshev.hpp"
#include "orderable/error.hpp"
#include "orderable/parallel.hpp"

namespace orderable {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

std::string at_y(double y) { return " at y = " + std::to_string(y); }

struct Bracketed {
    double root;
    double value;
};

// Bisection on [lo, hi] with f(lo), f(hi) of opposite sign, then at most five
// Newton steps that must stay inside the final bracket and reduce |f|.
template <class F>
Bracketed bisect_polish(F&& f, double lo, double hi, double flo, double y) {
    double fhi = f(hi);
    if (sign_of(flo) * sign_of(fhi) > 0)
        throw NumericError(NumericFault::BracketSign, "bisection bracket has no sign change" + at_y(y), y);
    for (int it = 0; it < 4000; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        if (hi - lo <= 1e-14 * std::max(std::abs(lo), std::abs(hi))) break;
        const double fm = f(mid);
        if (fm == 0.0) return {mid, 0.0};
        if (sign_of(fm) == sign_of(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    double best = std::abs(flo) < std::abs(fhi) ? lo : hi;
    double fbest = std::abs(flo) < std::abs(fhi) ? flo : fhi;
    for (int step = 0; step < 5 && fbest != 0.0; ++step) {
        const double h = std::max(hi - lo, 1e-300);
        const double slope = (fhi - flo) / h;
        if (!(std::abs(slope) > 0.0) || !std::isfinite(slope)) break;
        const double next = best - fbest / slope;
        if (!(next >= lo && next <= hi)) break;
        const double fn = f(next);
        if (!(std::abs(fn) < std::abs(fbest))) break;
        best = next;
        fbest = fn;
    }
    return {best, fbest};
}

}  // namespace

double left_endpoint(const KnotSpec& spec) {
    if (spec.even()) return 2.0;
    return 2.0 * std::cos(std::numbers::pi / (2 * spec.m + 1));
}

bool admissible(const KnotSpec& spec, double y) { return std::isfinite(y) && y > left_endpoint(spec); }

std::vector<double> bracket_offsets(const KnotSpec& spec, double y) {
    if (!admissible(spec, y))
        throw NumericError(NumericFault::Domain,
                           "brackets: y = " + std::to_string(y) + " outside the admissible range for " +
                               spec.to_string(),
                           y);
    const TraceData td = trace_data(spec.m, y);
    const auto tj = cheb_diff_roots(spec.n);
    std::vector<double> offs;
    offs.reserve(tj.size());
    if (spec.even()) {
        const double denom = (y - 2.0) * td.H * td.H;
        for (double t : tj) offs.push_back((2.0 - t) / denom);
    } else {
        const double denom = td.D * td.D;
        for (double t : tj) offs.push_back(-(2.0 - t) / denom);
    }
    return offs;
}

std::vector<double> brackets(const KnotSpec& spec, double y) {
    auto offs = bracket_offsets(spec, y);
    for (double& o : offs) o += y + 2.0;
    return offs;
}

double scaled_residual(const RileySlice& slice, double x) {
    const double lead = std::abs(slice.leading());
    const double scale = std::max(1.0, lead * std::pow(std::abs(x), slice.spec().n));
    return std::abs(slice.eval(x)) / scale;
}

RootCurveSample roots_at(const KnotSpec& spec, double y, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("roots_at: tol must be positive");
    const auto offs = bracket_offsets(spec, y);
    const RileySlice slice(spec, y);
    auto f = [&](double e) { return slice.eval_offset(e); };
    const int n = spec.n;

    std::vector<double> vals(n);
    for (int j = 0; j < n; ++j) vals[j] = f(offs[j]);
    const int first = spec.family == Family::EvenPlus ? -1 : 1;
    for (int j = 0; j < n; ++j) {
        const int expected = (j % 2 == 0) ? first : -first;
        if (sign_of(vals[j]) != expected)
            throw NumericError(NumericFault::BracketSign,
                               "R(s_" + std::to_string(j + 1) + ", y) has the wrong sign for " + spec.to_string() +
                                   at_y(y),
                               y);
    }

    std::vector<double> root_offsets(n);
    // branch 0
    switch (spec.family) {
        case Family::EvenPlus:
            root_offsets[0] = bisect_polish(f, 0.0, offs[0], f(0.0), y).root;
            break;
        case Family::EvenMinus: {
            const double lo = -(y + 2.0);
            root_offsets[0] = bisect_polish(f, lo, 0.0, f(lo), y).root;
            break;
        }
        case Family::OddMinus: {
            double hi = 1.0;
            while (f(hi) > 0.0) {
                hi *= 2.0;
                if (!(hi < 1e300))
                    throw NumericError(NumericFault::NonConvergence,
                                       "no sign change found above y+2 for " + spec.to_string() + at_y(y), y);
            }
            root_offsets[0] = bisect_polish(f, 0.0, hi, f(0.0), y).root;
            break;
        }
    }
    for (int j = 1; j < n; ++j) {
        double lo = offs[j - 1], hi = offs[j];
        double flo = vals[j - 1];
        if (lo > hi) {
            std::swap(lo, hi);
            flo = vals[j];
        }
        root_offsets[j] = bisect_polish(f, lo, hi, flo, y).root;
    }

    RootCurveSample sample;
    sample.y = y;
    sample.offsets = root_offsets;
    sample.brackets = offs;
    for (double& b : sample.brackets) b += y + 2.0;
    for (int j = 0; j < n; ++j) {
        const double x = y + 2.0 + root_offsets[j];
        sample.roots.push_back(x);
        const double res = scaled_residual(slice, x);
        if (!(res < tol))
            throw NumericError(NumericFault::NonConvergence,
                               "residual " + std::to_string(res) + " for root " + std::to_string(j) + at_y(y), y);
        sample.residuals.push_back(res);
    }
    // offsets keep the separation that x = y + 2 + offset rounds away at large y
    std::vector<double> sorted = root_offsets;
    std::sort(sorted.begin(), sorted.end());
    for (int j = 1; j < n; ++j) {
        const double scale = std::max({std::abs(sorted[j]), std::abs(sorted[j - 1]), std::numeric_limits<double>::min()});
        if (std::abs(sorted[j] - sorted[j - 1]) <= tol * scale)
            throw NumericError(NumericFault::BranchCollision, "two roots within tolerance" + at_y(y), y);
    }
    return sample;
}

std::vector<BranchSample> trace_branch(const KnotSpec& spec, int branch, std::span<const double> y_grid,
                                       const TraceOptions& opts) {
    if (branch < 0 || branch >= spec.n)
        throw std::invalid_argument("trace_branch: branch index out of range");
    for (std::size_t i = 1; i < y_grid.size(); ++i)
        if (!(y_grid[i] > y_grid[i - 1])) throw std::invalid_argument("trace_branch: grid must be increasing");

    auto sample_at = [&](double y) {
        const RootCurveSample s = roots_at(spec, y, opts.tol);
        return BranchSample{y, s.roots[branch], s.offsets[branch], s.residuals[branch]};
    };

    std::vector<BranchSample> pts(y_grid.size());
    parallel_for(y_grid.size(), [&](std::size_t i) { pts[i] = sample_at(y_grid[i]); });
    if (pts.size() < 3) return pts;

    const double min_width =
        (y_grid.back() - y_grid.front()) / static_cast<double>(y_grid.size()) / std::ldexp(1.0, opts.max_refine);

    auto slope = [&](std::size_t i) { return (pts[i + 1].x - pts[i].x) / (pts[i + 1].y - pts[i].y); };
    for (int pass = 0; pass < 64; ++pass) {
        bool changed = false;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            double neighbour = 0.0;
            if (i > 0) neighbour = std::max(neighbour, std::abs(slope(i - 1)));
            if (i + 2 < pts.size()) neighbour = std::max(neighbour, std::abs(slope(i + 1)));
            const double dy = pts[i + 1].y - pts[i].y;
            const double dx = std::abs(pts[i + 1].x - pts[i].x);
            const double gate = opts.slope_factor * neighbour * dy + 1e-9 * std::max(1.0, std::abs(pts[i].x));
            if (dx <= gate) continue;
            if (dy <= min_width)
                throw NumericError(NumericFault::BranchDiscontinuity,
                                   "branch " + std::to_string(branch) + " jumps between y = " +
                                       std::to_string(pts[i].y) + " and " + std::to_string(pts[i + 1].y),
                                   pts[i].y);
            const double mid = pts[i].y + 0.5 * dy;
            pts.insert(pts.begin() + static_cast<std::ptrdiff_t>(i + 1), sample_at(mid));
            changed = true;
            ++i;
        }
        if (!changed) break;
    }
    return pts;
}

PrincipalPoint principal_branch_odd(const KnotSpec& spec, double y, double tol) {
    if (spec.family != Family::OddMinus)
        throw std::invalid_argument("principal_branch_odd: OddMinus family only");
    if (!admissible(spec, y))
        throw NumericError(NumericFault::Domain,
                           "principal_branch_odd: y = " + std::to_string(y) + " not above 2cos(pi/(2m+1))", y);
    const int m = spec.m, n = spec.n;
    const TraceData td = trace_data(m, y);
    const double G = td.G, H = td.H, D = td.D;
    const double r = G / H;
    const double logD = std::log(D), logH = std::log(H);

    // u = v exp(-sigma); sigma = (2m+2n-2) log xi once xi is defined
    const bool scaled = y > 2.0;
    const double sigma = scaled ? (2.0 * m + 2.0 * n - 2.0) * std::log(xi_from_trace(y)) : 0.0;

    // R (tau - 1/tau) tau^n = (tau - 1/r) + u D tau^{2n} H [ (r-1)/(tau r-1) - (1 - tau^{-2n}) ]
    // with t = tau + 1/tau = r + 1/r + u D^2.
    auto phi = [&](double v) {
        const double u = v * std::exp(-sigma);
        const double tm2 = D * D * (1.0 / (G * H) + u);
        const double tau = 1.0 + 0.5 * tm2 + 0.5 * std::sqrt(tm2 * (tm2 + 4.0));
        const double lt = std::log(tau);
        const double bracket = (D / H) / (tau * r - 1.0) + std::expm1(-2.0 * n * lt);
        const double coef = std::exp(logD + logH + 2.0 * n * lt - sigma);
        return (tau - 1.0 / r) + v * coef * bracket;
    };

    const double f0 = phi(0.0);
    double hi = 1.0;
    while (phi(hi) > 0.0) {
        hi *= 2.0;
        if (!(hi < 1e300))
            throw NumericError(NumericFault::NonConvergence, "principal_branch_odd: no sign change" + at_y(y), y);
    }
    const Bracketed sol = bisect_polish(phi, 0.0, hi, f0, y);

    PrincipalPoint pt;
    pt.y = y;
    pt.G = G;
    pt.H = H;
    pt.D = D;
    pt.r = r;
    pt.u = sol.root * std::exp(-sigma);
    pt.delta_hat = scaled ? sol.root : std::nan("");
    pt.x = 2.0 + r + 1.0 / r + pt.u;
    pt.residual = std::abs(sol.value) / std::max(1.0, std::abs(f0));
    if (!(pt.residual < tol))
        throw NumericError(NumericFault::NonConvergence,
                           "principal_branch_odd: residual " + std::to_string(pt.residual) + at_y(y), y);
    return pt;
}

std::vector<double> default_grid(const KnotSpec& spec, double y_min, double y_max, int samples) {
    const double left = left_endpoint(spec);
    if (!(y_min > left)) throw NumericError(NumericFault::Domain, "grid: y_min must exceed the left endpoint", y_min);
    if (!(y_max > y_min)) throw std::invalid_argument("grid: need y_min < y_max");
    if (samples < 2) throw std::invalid_argument("grid: need at least 2 samples");

    auto logspace = [](double a, double b, int count, auto&& map) {
        std::vector<double> out;
        const double la = std::log(a), lb = std::log(b);
        for (int i = 0; i < count; ++i) {
            const double s = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
            out.push_back(map(std::exp(la + s * (lb - la))));
        }
        return out;
    };

    const double y_mid = left + 1.0;
    std::vector<double> grid;
    if (y_min >= y_mid) {
        grid = logspace(y_min, y_max, samples, [](double v) { return v; });
    } else if (y_max <= y_mid) {
        grid = logspace(y_min - left, y_max - left, samples, [left](double d) { return left + d; });
    } else {
        const int na = std::max(2, samples / 2);
        const int nb = std::max(2, samples - na + 1);
        grid = logspace(y_min - left, y_mid - left, na, [left](double d) { return left + d; });
        const auto tail = logspace(y_mid, y_max, nb, [](double v) { return v; });
        grid.insert(grid.end(), tail.begin() + 1, tail.end());
    }
    grid.front() = y_min;
    grid.back() = y_max;
    std::vector<double> out;
    for (double y : grid)
        if (out.empty() || y > out.back()) out.push_back(y);
    return out;
}

}  // namespace orderable
