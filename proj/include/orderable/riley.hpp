#pragma once

#include <vector>

#include "orderable/knot.hpp"

namespace orderable {

/// G = S_m(y), H = S_{m-1}(y), D = G - H, with logs where the value is positive.
/// Above kLargeTrace the values come from the xi-parametrization y = xi + 1/xi.
struct TraceData {
    double y = 0.0;
    double G = 1.0;
    double H = 0.0;
    double D = 1.0;
    double Hm = 0.0;  // S_{m-2}(y)
};

inline constexpr double kLargeTrace = 1e3;

TraceData trace_data(int m, double y);

struct RileyPoint {
    double x = 0.0;
    double y = 0.0;
    double t = 2.0;
    double z = 1.0;
    double r = 1.0;
};

/// Dense univariate polynomial, coefficients in ascending degree.
struct Polynomial {
    std::vector<double> coeffs;

    int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
    double leading() const { return coeffs.back(); }
    double operator()(double x) const;
};

double trace_t(const KnotSpec& spec, double x, double y);
double z_val(const KnotSpec& spec, double x, double y);
double riley_eval(const KnotSpec& spec, double x, double y);
RileyPoint riley_point(const KnotSpec& spec, double x, double y);

/// R(., y) as a polynomial of degree n in x. Throws NumericError(DegenerateLeading)
/// naming the factor of the leading coefficient that vanished.
Polynomial riley_coeffs(const KnotSpec& spec, double y);

/// R restricted to a fixed y, parametrized by the offset e = x - (y + 2).
/// t and z are affine in e: t = 2 + alpha e, z = 1 + beta e.
class RileySlice {
public:
    RileySlice(const KnotSpec& spec, double y);

    const KnotSpec& spec() const noexcept { return spec_; }
    double y() const noexcept { return y_; }
    const TraceData& traces() const noexcept { return td_; }
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

    double t_at(double e) const { return 2.0 + alpha_ * e; }
    double z_at(double e) const { return 1.0 + beta_ * e; }
    /// R(y + 2 + e, y)
    double eval_offset(double e) const;
    double eval(double x) const { return eval_offset(x - (y_ + 2.0)); }

    /// Riley value as a function of t and z alone.
    double eval_tz(double t, double z) const;

    /// Leading coefficient of R(., y) in x (closed form).
    double leading() const;

private:
    KnotSpec spec_;
    double y_;
    TraceData td_;
    double alpha_;
    double beta_;
};

}  // namespace orderable
