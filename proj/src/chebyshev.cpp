#include "orderable/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "orderable/error.hpp"

namespace orderable {

namespace {

constexpr int kClosedFormIndex = 60;
constexpr int kFactoredDiffMax = 64;

double recurrence(int j, double v) {
    // j >= 0 here
    if (j == 0) return 1.0;
    double prev = 1.0, cur = v;
    for (int i = 1; i < j; ++i) {
        const double next = v * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace

double LogMagnitude::value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
}

double xi_from_trace(double v) {
    if (!(v > 2.0))
        throw NumericError(NumericFault::Domain, "xi_from_trace: need v > 2, got " + std::to_string(v));
    return 0.5 * (v + std::sqrt((v - 2.0) * (v + 2.0)));
}

LogMagnitude cheb_log_stable(int j, double xi) {
    if (!(xi > 1.0))
        throw NumericError(NumericFault::Domain, "cheb_log_stable: need xi > 1, got " + std::to_string(xi));
    if (j == -1) return {0.0, 0};
    if (j < -1) {
        LogMagnitude r = cheb_log_stable(-j - 2, xi);
        r.sign = -r.sign;
        return r;
    }
    // S_j = xi^j (1 - xi^{-2(j+1)}) / (1 - xi^{-2})
    const double lx = std::log(xi);
    const double k = static_cast<double>(j) + 1.0;
    const double ratio = std::expm1(-2.0 * k * lx) / std::expm1(-2.0 * lx);
    return {j * lx + std::log(ratio), 1};
}

double cheb_eval_stable(int j, double xi) { return cheb_log_stable(j, xi).value(); }

double cheb_eval(int j, double v) {
    if (j == -1) return 0.0;
    if (j < -1) return -cheb_eval(-j - 2, v);
    if (std::abs(v) > 2.0 && j > kClosedFormIndex) {
        const double mag = cheb_eval_stable(j, xi_from_trace(std::abs(v)));
        return (v < 0.0 && (j % 2 != 0)) ? -mag : mag;
    }
    return recurrence(j, v);
}

ChebPair cheb_pair(int j, double v) { return {j, v, cheb_eval(j, v), cheb_eval(j - 1, v)}; }

std::vector<double> cheb_roots(int n) {
    if (n <= 0) throw std::invalid_argument("cheb_roots: n must be positive, got " + std::to_string(n));
    std::vector<double> roots;
    roots.reserve(n);
    for (int j = 1; j <= n; ++j) roots.push_back(2.0 * std::cos(j * std::numbers::pi / (n + 1)));
    // the middle root of an odd n is exactly zero
    if (n % 2 == 1) roots[n / 2] = 0.0;
    return roots;
}

std::vector<double> cheb_diff_roots(int n) {
    if (n <= 0) throw std::invalid_argument("cheb_diff_roots: n must be positive, got " + std::to_string(n));
    std::vector<double> roots;
    roots.reserve(n);
    for (int j = 1; j <= n; ++j) roots.push_back(2.0 * std::cos((2 * j - 1) * std::numbers::pi / (2 * n + 1)));
    return roots;
}

double cheb_diff(int j, double v) {
    if (j < 0) return cheb_diff(-j - 1, v);
    if (j == 0) return 1.0;
    if (j <= kFactoredDiffMax && std::abs(v) <= 4.0) {
        double prod = 1.0;
        for (double t : cheb_diff_roots(j)) prod *= (v - t);
        return prod;
    }
    return cheb_eval(j, v) - cheb_eval(j - 1, v);
}

}  // namespace orderable
