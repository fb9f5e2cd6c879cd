#pragma once

#include <vector>

namespace orderable {

/// S_j(v) together with S_{j-1}(v).
struct ChebPair {
    int j = 0;
    double v = 0.0;
    double sj = 1.0;
    double sjm1 = 0.0;
};

/// log|S_j| and sign of S_j, for arguments where S_j itself may overflow.
struct LogMagnitude {
    double log_abs = 0.0;
    int sign = 0;  // 0 means the value is exactly zero

    double value() const;
};

/// S_j(v) from S_0 = 1, S_1 = v, S_j = v S_{j-1} - S_{j-2}, extended to negative j
/// through S_j = -S_{-j-2}. Large |v| with large |j| goes through the closed form.
double cheb_eval(int j, double v);

ChebPair cheb_pair(int j, double v);

/// S_j(xi + 1/xi) via (xi^{j+1} - xi^{-(j+1)}) / (xi - 1/xi). Requires xi > 1.
double cheb_eval_stable(int j, double xi);

/// Log-domain version of cheb_eval_stable; finite for any xi > 1 and any j.
LogMagnitude cheb_log_stable(int j, double xi);

/// S_j(v) - S_{j-1}(v). Uses the factored form for small positive j so that
/// values near the roots keep full relative accuracy.
double cheb_diff(int j, double v);

/// Roots of S_n: 2cos(j pi/(n+1)), j = 1..n, descending.
std::vector<double> cheb_roots(int n);

/// Roots of S_n - S_{n-1}: 2cos((2j-1) pi/(2n+1)), j = 1..n, descending.
std::vector<double> cheb_diff_roots(int n);

/// xi > 1 with xi + 1/xi = v, for v > 2.
double xi_from_trace(double v);

}  // namespace orderable
