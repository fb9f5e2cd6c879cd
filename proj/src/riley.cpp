#include "orderable/riley.hpp"

#include <cmath>
#include <string>

#include "orderable/chebyshev.hpp"
#include "orderable/error.hpp"

namespace orderable {

TraceData trace_data(int m, double y) {
    TraceData td;
    td.y = y;
    if (y > kLargeTrace) {
        const double xi = xi_from_trace(y);
        const double lx = std::log(xi);
        td.G = cheb_eval_stable(m, xi);
        td.H = cheb_eval_stable(m - 1, xi);
        td.Hm = cheb_eval_stable(m - 2, xi);
        // S_m - S_{m-1} = xi^m (xi - 1)(1 + xi^{-2m-1}) / (xi - 1/xi)
        td.D = std::exp(m * lx + std::log(xi - 1.0) + std::log1p(std::exp(-(2.0 * m + 1.0) * lx)) -
                        std::log(xi - 1.0 / xi));
        return td;
    }
    td.G = cheb_eval(m, y);
    td.H = cheb_eval(m - 1, y);
    td.Hm = cheb_eval(m - 2, y);
    td.D = cheb_diff(m, y);
    return td;
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RileySlice::RileySlice(const KnotSpec& spec, double y) : spec_(spec), y_(y), td_(trace_data(spec.m, y)) {
    if (spec.even()) {
        // t = 2 + (y+2-x)(y-2)H^2, z = 1 + (y+2-x) H (G-H)
        alpha_ = -(y - 2.0) * td_.H * td_.H;
        beta_ = -td_.H * td_.D;
    } else {
        // t = 2 - (y+2-x)(G-H)^2, z = 1 - (y+2-x) G (G-H)
        alpha_ = td_.D * td_.D;
        beta_ = td_.G * td_.D;
    }
}

double RileySlice::eval_tz(double t, double z) const {
    return cheb_eval(spec_.p, t) - z * cheb_eval(spec_.p - 1, t);
}

double RileySlice::eval_offset(double e) const { return eval_tz(t_at(e), z_at(e)); }

double RileySlice::leading() const {
    const int n = spec_.n;
    const double apow = std::pow(alpha_, n - 1);
    switch (spec_.family) {
        case Family::EvenPlus: return beta_ * apow;
        case Family::EvenMinus: return td_.H * (td_.H - td_.Hm) * apow;
        case Family::OddMinus: return -td_.D * td_.H * apow;
    }
    return 0.0;
}

double trace_t(const KnotSpec& spec, double x, double y) {
    const RileySlice s(spec, y);
    return s.t_at(x - (y + 2.0));
}

double z_val(const KnotSpec& spec, double x, double y) {
    const RileySlice s(spec, y);
    return s.z_at(x - (y + 2.0));
}

double riley_eval(const KnotSpec& spec, double x, double y) { return RileySlice(spec, y).eval(x); }

RileyPoint riley_point(const KnotSpec& spec, double x, double y) {
    const RileySlice s(spec, y);
    const double e = x - (y + 2.0);
    RileyPoint pt;
    pt.x = x;
    pt.y = y;
    pt.t = s.t_at(e);
    pt.z = s.z_at(e);
    pt.r = s.eval_tz(pt.t, pt.z);
    return pt;
}

namespace {

using Coeffs = std::vector<double>;

Coeffs poly_add(const Coeffs& a, const Coeffs& b, double sb = 1.0) {
    Coeffs out(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += sb * b[i];
    return out;
}

Coeffs poly_mul_linear(const Coeffs& a, double c0, double c1) {
    Coeffs out(a.size() + 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] += c0 * a[i];
        out[i + 1] += c1 * a[i];
    }
    return out;
}

// S_j(t0 + t1 x) for j = -1..jmax
std::vector<Coeffs> cheb_polys(int jmax, double t0, double t1) {
    std::vector<Coeffs> s;
    s.push_back({0.0});  // S_{-1}
    s.push_back({1.0});  // S_0
    for (int j = 1; j <= jmax; ++j) {
        const Coeffs& prev = s[j];
        const Coeffs& prev2 = s[j - 1];
        s.push_back(poly_add(poly_mul_linear(prev, t0, t1), prev2, -1.0));
    }
    return s;
}

void check_factor(double value, double scale, const char* name, double y) {
    if (std::abs(value) <= 1e-13 * std::max(1.0, scale))
        throw NumericError(NumericFault::DegenerateLeading,
                           std::string("riley_coeffs: leading coefficient vanishes (factor ") + name +
                               " = 0) at y = " + std::to_string(y),
                           y);
}

}  // namespace

Polynomial riley_coeffs(const KnotSpec& spec, double y) {
    const RileySlice s(spec, y);
    const TraceData& td = s.traces();
    const double scale = std::max(std::abs(td.G), std::abs(td.H));
    const int n = spec.n;

    switch (spec.family) {
        case Family::EvenPlus:
            if (n >= 2) check_factor(y - 2.0, std::abs(y), "y-2", y);
            check_factor(td.H, scale, "S_{m-1}(y)", y);
            check_factor(td.D, scale, "S_m(y)-S_{m-1}(y)", y);
            break;
        case Family::EvenMinus:
            if (n >= 2) check_factor(y - 2.0, std::abs(y), "y-2", y);
            check_factor(td.H, scale, "S_{m-1}(y)", y);
            check_factor(td.H - td.Hm, scale, "S_{m-1}(y)-S_{m-2}(y)", y);
            break;
        case Family::OddMinus:
            check_factor(td.D, scale, "S_m(y)-S_{m-1}(y)", y);
            check_factor(td.H, scale, "S_{m-1}(y)", y);
            break;
    }

    // t = t0 + t1 x, z = z0 + z1 x
    const double t1 = s.alpha(), t0 = 2.0 - (y + 2.0) * t1;
    const double z1 = s.beta(), z0 = 1.0 - (y + 2.0) * z1;
    const int p = spec.p;
    const int jmax = std::max(std::abs(p), std::abs(p - 1)) + 1;
    const auto polys = cheb_polys(jmax, t0, t1);
    auto S = [&](int j) -> Coeffs {
        if (j >= -1) return polys[j + 1];
        Coeffs c = polys[-j - 2 + 1];
        for (double& v : c) v = -v;
        return c;
    };
    Coeffs r = poly_add(S(p), poly_mul_linear(S(p - 1), z0, z1), -1.0);
    r.resize(n + 1);
    r[n] = s.leading();
    return Polynomial{r};
}

}  // namespace orderable
