#include "orderable/slopes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "orderable/cover.hpp"
#include "orderable/error.hpp"
#include "orderable/parallel.hpp"
#include "orderable/precise.hpp"
#include "orderable/representation.hpp"

namespace orderable {

namespace {

constexpr double kReferenceY = 3.0;
constexpr double kWitnessTol = 1e-9;

std::string at_y(double y) { return " at y = " + std::to_string(y); }

bool is_gap(const NumericError& e) {
    return e.fault() == NumericFault::Elliptic || e.fault() == NumericFault::NotHyperbolic;
}

// The double word is trusted only while its trace matches 2 cosh(log L);
// past that the index is recomputed in MPFR. Failures here are not gaps.
int index_at(const KnotSpec& spec, double y, const PeripheralLogs& pl, double offset) {
    if (const auto k = rep_index_checked(spec, std::exp(pl.logM), y, 2.0 * std::cosh(pl.logL))) return *k;
    try {
        return precise_rep(spec, y, offset).index;
    } catch (const NumericError& e) {
        throw NumericError(NumericFault::AmbiguousIndex, std::string("index undetermined: ") + e.what(), y);
    }
}

// Everything but the index for y beyond kIndexMaxY.
SlopeSample evaluate(const KnotSpec& spec, int branch, double y, double tol) {
    if (branch < 0 || branch >= spec.n)
        throw std::invalid_argument("branch " + std::to_string(branch) + " out of range for " + spec.to_string());
    SlopeSample s;
    s.y = y;
    try {
        PeripheralLogs pl;
        double offset = 0.0;
        if (!spec.even() && branch == 0) {
            const PrincipalPoint pt = principal_branch_odd(spec, y, tol);
            s.x = pt.x;
            s.residual = pt.residual;
            pl = peripheral_logs_odd(spec, pt);
            offset = principal_offset(pt);
        } else {
            const RootCurveSample rc = roots_at(spec, y, tol);
            s.x = rc.roots[branch];
            s.residual = rc.residuals[branch];
            offset = rc.offsets[branch];
            pl = spec.even() ? peripheral_logs_even(spec, y, rc.offsets[branch])
                             : peripheral_logs_direct(spec, s.x, y);
        }
        if (!(pl.logM > 0.0) || !std::isfinite(pl.logL))
            throw NumericError(NumericFault::NotHyperbolic, "meridian is not hyperbolic", y);
        s.logM = pl.logM;
        s.logL = pl.logL;
        s.f = -pl.logL / pl.logM;
        if (y <= kIndexMaxY) {
            s.index = index_at(spec, y, pl, offset);
        } else {
            s.index_carried = true;
        }
    } catch (const NumericError& e) {
        if (std::isnan(e.y())) throw NumericError(e.fault(), e.what() + at_y(y), y);
        throw;
    }
    return s;
}

double log_midpoint(double left, double a, double b) {
    const double mid = left + std::sqrt((a - left) * (b - left));
    if (mid > a && mid < b) return mid;
    return a + 0.5 * (b - a);
}

struct GridPoint {
    double y;
    bool ok;
    SlopeSample s;
};

GridPoint evaluate_point(const KnotSpec& spec, int branch, double y, double tol) {
    try {
        return {y, true, evaluate(spec, branch, y, tol)};
    } catch (const NumericError& e) {
        if (is_gap(e)) return {y, false, {}};
        throw;
    }
}

int gcd_int(int a, int b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// p - q f has the sign of p logM + q logL since logM > 0
double slope_gap(int p, int q, const SlopeSample& s) { return p * s.logM + q * s.logL; }

Witness bisect_witness(const KnotSpec& spec, int branch, int p, int q, SlopeSample a, SlopeSample b, double tol) {
    const double left = left_endpoint(spec);
    double ga = slope_gap(p, q, a), gb = slope_gap(p, q, b);
    for (int it = 0; it < 200; ++it) {
        if (ga == 0.0 || gb == 0.0) break;
        const double mid = log_midpoint(left, a.y, b.y);
        if (!(mid > a.y && mid < b.y)) break;
        const SlopeSample s = evaluate(spec, branch, mid, tol);
        const double g = slope_gap(p, q, s);
        if ((g < 0.0) == (ga < 0.0)) {
            a = s;
            ga = g;
        } else {
            b = s;
            gb = g;
        }
        if (std::min(std::abs(ga), std::abs(gb)) < 1e-14) break;
    }
    const SlopeSample& best = std::abs(ga) <= std::abs(gb) ? a : b;
    Witness w;
    w.p = p;
    w.q = q;
    w.y = best.y;
    w.residual = std::abs(slope_gap(p, q, best));
    w.index = best.index;
    w.branch = branch;
    if (!(w.residual < kWitnessTol))
        throw NumericError(NumericFault::NonConvergence,
                           "slope " + std::to_string(p) + "/" + std::to_string(q) + " residual " +
                               std::to_string(w.residual) + at_y(best.y),
                           best.y);
    return w;
}

// First bracketing pair over the branches' segments, in branch then y order.
std::optional<Witness> find_witness(const KnotSpec& spec, int p, int q,
                                    const std::vector<std::pair<int, std::vector<std::vector<SlopeSample>>>>& sweeps,
                                    double tol) {
    for (const auto& [branch, segments] : sweeps) {
        for (const auto& seg : segments) {
            for (std::size_t i = 0; i + 1 < seg.size(); ++i) {
                const double ga = slope_gap(p, q, seg[i]), gb = slope_gap(p, q, seg[i + 1]);
                if (ga == 0.0) {
                    return Witness{p, q, seg[i].y, 0.0, seg[i].index, branch};
                }
                if ((ga < 0.0) != (gb < 0.0) && gb != 0.0) {
                    Witness w = bisect_witness(spec, branch, p, q, seg[i], seg[i + 1], tol);
                    if (w.y > kIndexMaxY) w.index = seg[i].index;
                    return w;
                }
            }
            if (!seg.empty() && slope_gap(p, q, seg.back()) == 0.0) {
                const SlopeSample& s = seg.back();
                return Witness{p, q, s.y, 0.0, s.index, branch};
            }
        }
    }
    return std::nullopt;
}

}  // namespace

int branch_index(const KnotSpec& spec, int branch) { return evaluate(spec, branch, kReferenceY, kDefaultRootTol).index; }

SlopeSample slope_at(const KnotSpec& spec, int branch, double y, std::optional<int> carried, double tol) {
    if (!admissible(spec, y))
        throw NumericError(NumericFault::Domain, "y = " + std::to_string(y) + " is not admissible for " + spec.to_string(),
                           y);
    SlopeSample s = evaluate(spec, branch, y, tol);
    if (s.index_carried) s.index = carried ? *carried : branch_index(spec, branch);
    return s;
}

std::vector<int> default_branches(const KnotSpec& spec) {
    if (!spec.even()) return {0};
    std::vector<int> out;
    for (int j = 1; j < spec.n; ++j) out.push_back(j);
    return out;
}

Interval target_interval(const KnotSpec& spec) {
    switch (spec.family) {
        case Family::EvenMinus: return {0.0, 4.0 * std::max(spec.m, spec.n)};
        default: return {-4.0 * spec.n, 4.0 * spec.m};
    }
}

bool index_condition_holds(int p, int k) { return k == 0 || (p != 0 && k % p == 0); }

std::vector<std::vector<SlopeSample>> sweep_branch(const KnotSpec& spec, int branch, double y_min, double y_max,
                                                   const CertifyOptions& opts, int* refinements) {
    const double left = left_endpoint(spec);
    const std::vector<double> grid = default_grid(spec, y_min, y_max, opts.samples);
    std::vector<GridPoint> pts(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { pts[i] = evaluate_point(spec, branch, grid[i], opts.tol); });

    int added = 0;
    for (int pass = 0;; ++pass) {
        std::vector<std::size_t> jumps;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            if (pts[i].ok && pts[i + 1].ok && std::abs(pts[i + 1].s.f - pts[i].s.f) > opts.jump_gate)
                jumps.push_back(i);
        if (jumps.empty()) break;
        if (pass >= opts.max_refine) {
            const GridPoint& a = pts[jumps.front()];
            throw NumericError(NumericFault::BranchDiscontinuity,
                               "slope jump " + std::to_string(std::abs(pts[jumps.front() + 1].s.f - a.s.f)) +
                                   " persists after refinement on branch " + std::to_string(branch) + at_y(a.y),
                               a.y);
        }
        std::vector<GridPoint> mids(jumps.size());
        parallel_for(jumps.size(), [&](std::size_t k) {
            const double a = pts[jumps[k]].y, b = pts[jumps[k] + 1].y;
            const double mid = log_midpoint(left, a, b);
            if (!(mid > a && mid < b))
                throw NumericError(NumericFault::BranchDiscontinuity,
                                   "slope jump cannot be resolved on branch " + std::to_string(branch) + at_y(a), a);
            mids[k] = evaluate_point(spec, branch, mid, opts.tol);
        });
        std::vector<GridPoint> merged;
        merged.reserve(pts.size() + mids.size());
        std::size_t k = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            merged.push_back(pts[i]);
            if (k < jumps.size() && jumps[k] == i) merged.push_back(mids[k++]);
        }
        pts = std::move(merged);
        added += static_cast<int>(mids.size());
    }
    if (refinements) *refinements = added;

    std::optional<int> carried;
    for (const GridPoint& gp : pts)
        if (gp.ok && !gp.s.index_carried) carried = gp.s.index;

    std::vector<std::vector<SlopeSample>> segments;
    bool open = false;
    for (GridPoint& gp : pts) {
        if (!gp.ok) {
            open = false;
            continue;
        }
        if (gp.s.index_carried) {
            if (!carried) carried = branch_index(spec, branch);
            gp.s.index = *carried;
        }
        if (!open) segments.emplace_back();
        segments.back().push_back(gp.s);
        open = true;
    }
    return segments;
}

SlopeCertificate certify_interval(const KnotSpec& spec, const std::vector<int>& branches, Interval y_range,
                                  const CertifyOptions& opts) {
    if (branches.empty()) throw std::invalid_argument("certify: no branches requested");
    SlopeCertificate cert;
    cert.spec = spec;
    cert.branches = branches;
    cert.y_range = y_range;
    cert.target = target_interval(spec);

    std::vector<std::pair<int, std::vector<std::vector<SlopeSample>>>> sweeps;
    std::vector<Interval> ranges;
    for (int branch : branches) {
        BranchRange br;
        br.branch = branch;
        auto segments = sweep_branch(spec, branch, y_range.lo, y_range.hi, opts, &br.refinements);
        bool first = true;
        for (const auto& seg : segments) {
            Interval fr{seg.front().f, seg.front().f};
            for (const SlopeSample& s : seg) {
                fr.lo = std::min(fr.lo, s.f);
                fr.hi = std::max(fr.hi, s.f);
                if (!s.index_carried) {
                    if (first) br.index = s.index;
                    else if (s.index != br.index) br.index_constant = false;
                    first = false;
                }
                ++br.samples;
            }
            br.y_segments.push_back({seg.front().y, seg.back().y});
            br.f_ranges.push_back(fr);
            ranges.push_back(fr);
        }
        if (first && !segments.empty()) br.index = segments.front().front().index;
        cert.per_branch.push_back(std::move(br));
        sweeps.emplace_back(branch, std::move(segments));
    }
    if (ranges.empty())
        throw NumericError(NumericFault::NotFound, "certify: no hyperbolic samples on the requested branches");

    std::sort(ranges.begin(), ranges.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const Interval& r : ranges) {
        if (!merged.empty() && r.lo <= merged.back().hi) merged.back().hi = std::max(merged.back().hi, r.hi);
        else merged.push_back(r);
    }
    cert.attained = *std::max_element(merged.begin(), merged.end(),
                                      [](const Interval& a, const Interval& b) { return a.width() < b.width(); });
    const double lo = std::max(cert.attained.lo, cert.target.lo), hi = std::min(cert.attained.hi, cert.target.hi);
    cert.covered_fraction = std::max(0.0, hi - lo) / cert.target.width();

    // reduced p/q strictly inside the attained interval
    std::vector<std::pair<int, int>> slopes;
    for (int q = 1; q <= opts.q_max; ++q) {
        const int p_lo = static_cast<int>(std::floor(cert.attained.lo * q)) + 1;
        const int p_hi = static_cast<int>(std::ceil(cert.attained.hi * q)) - 1;
        for (int p = p_lo; p <= p_hi; ++p)
            if (gcd_int(p, q) == 1) slopes.emplace_back(p, q);
    }
    std::sort(slopes.begin(), slopes.end(), [](const auto& a, const auto& b) {
        return static_cast<long long>(a.first) * b.second < static_cast<long long>(b.first) * a.second;
    });
    std::vector<std::optional<Witness>> found(slopes.size());
    parallel_for(slopes.size(), [&](std::size_t i) {
        found[i] = find_witness(spec, slopes[i].first, slopes[i].second, sweeps, opts.tol);
    });
    for (const auto& w : found)
        if (w && index_condition_holds(w->p, w->index)) cert.witnesses.push_back(*w);
    return cert;
}

Witness is_lo_slope(const KnotSpec& spec, int p, int q, Interval y_range, const std::vector<int>& branches,
                    const CertifyOptions& opts) {
    if (q < 1) throw ParseError(ParseError::Kind::BadArgument, "slope denominator must be positive");
    if (gcd_int(p, q) != 1)
        throw ParseError(ParseError::Kind::BadArgument,
                         "slope " + std::to_string(p) + "/" + std::to_string(q) + " is not reduced");
    std::vector<std::pair<int, std::vector<std::vector<SlopeSample>>>> sweeps;
    for (int branch : branches) sweeps.emplace_back(branch, sweep_branch(spec, branch, y_range.lo, y_range.hi, opts));
    const auto w = find_witness(spec, p, q, sweeps, opts.tol);
    const std::string name = std::to_string(p) + "/" + std::to_string(q);
    if (!w) throw NumericError(NumericFault::NotFound, "slope " + name + " is not attained on " + spec.to_string());
    if (!index_condition_holds(p, w->index))
        throw NumericError(NumericFault::IndexConditionFailed,
                           "slope " + name + " witness has index " + std::to_string(w->index), w->y);
    return *w;
}

AsymptoticsReport asymptotics_report(const KnotSpec& spec) {
    if (spec.family != Family::OddMinus)
        throw ParseError(ParseError::Kind::UnsupportedFamily, "asymptotics: OddMinus family only");
    AsymptoticsReport rep;
    rep.spec = spec;
    rep.far_y = {1e3, 1e4, 1e6};
    for (double y : rep.far_y) rep.delta_hat.push_back(principal_branch_odd(spec, y).delta_hat);
    const double left = left_endpoint(spec);
    rep.near_delta = {1e-2, 1e-4, 1e-6};
    for (double d : rep.near_delta) rep.near_x.push_back(principal_branch_odd(spec, left + d).x);
    const auto grid = default_grid(spec, left + 1e-8, 1e12, 400);
    std::vector<double> xs(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { xs[i] = principal_branch_odd(spec, grid[i]).x; });
    const auto it = std::min_element(xs.begin(), xs.end());
    rep.min_x = *it;
    rep.min_x_y = grid[static_cast<std::size_t>(it - xs.begin())];
    return rep;
}

}  // namespace orderable
