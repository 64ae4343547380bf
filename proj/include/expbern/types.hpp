#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace expbern {

using cplx = std::complex<double>;

/// Thrown when a computation fails (singular system, non-Chebyshev pair,
/// unresolved limit, ...). Precondition violations use std::invalid_argument.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace tol {
// Default eigenvalue merge tolerance (absolute).
inline constexpr double merge_eps = 1e-9;
// Coefficient trim threshold, relative to the largest coefficient modulus.
inline constexpr double trim_rel = 1e-14;
// Hankel determinant nonzero threshold: |det| > hankel_rel * scale^(k+1).
inline constexpr double hankel_rel = 1e-10;
// Values in (near_zero_band * thr, thr] count as indeterminate, not zero.
inline constexpr double near_zero_band = 0.1;
// Relative threshold used when checking derivative orders in 0/0 limits.
inline constexpr double limit_rel = 1e-6;
// Allowed relative imaginary part of provably-real intermediates.
inline constexpr double realness_rel = 1e-9;
}  // namespace tol

inline constexpr double infinity = std::numeric_limits<double>::infinity();

/// x^n for integer n >= 0 by repeated multiplication (std::pow on complex
/// arguments goes through log and loses exactness for small integer powers).
inline cplx ipow(cplx x, int n) {
    cplx r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double c = 1.0;
    for (int i = 0; i < std::min(k, n - k); ++i) c = c * (n - i) / (i + 1);
    return c;
}

/// i * (i-1) * ... * (i-s+1), the falling factorial.
inline double falling(int i, int s) {
    double r = 1.0;
    for (int q = 0; q < s; ++q) r *= (i - q);
    return r;
}

inline std::vector<double> linspace(double a, double b, int m) {
    std::vector<double> xs(m);
    for (int i = 0; i < m; ++i) xs[i] = a + (b - a) * i / (m - 1);
    return xs;
}

/// Checks that z is real up to the relative realness tolerance and returns
/// its real part; `what` names the quantity in the error message.
double require_real(cplx z, const std::string& what, double rel = tol::realness_rel);

/// Shortest-but-full-precision decimal form ("%.17g").
std::string format_double(double v);
std::string format_complex(cplx z);

}  // namespace expbern
