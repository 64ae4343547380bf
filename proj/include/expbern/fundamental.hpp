#pragma once

#include <optional>
#include <vector>

#include "expbern/exppoly.hpp"

namespace expbern {

/// Result of the Chebyshev-system diagnostics for a spectrum on {a,b} or
/// [a,b]. pair_ok covers the two-point test; interval_ok stays unset for
/// the pair test and may be downgraded to unset by near-zero Hankel values.
/// conjugate_closed together with b-a < window_bound is a sufficient
/// certificate for the interval property, independent of any sampling.
struct ChebyshevDiagnosis {
    double a = 0.0, b = 0.0;
    int n = 0;
    std::vector<cplx> hankel_values;  // Phi_{n,k}(b-a), k = 0..n
    bool pair_ok = false;
    std::optional<bool> interval_ok;
    double window_bound = infinity;  // pi / M_n, +inf when all real
    bool conjugate_closed = false;
    struct Flag {
        int k;
        double x;
    };
    std::vector<Flag> near_zero_flags;

    bool window_certificate() const {
        return conjugate_closed && (b - a) < window_bound;
    }
};

/// The unique Phi in E_Lambda with Phi^{(i)}(0) = 0 for i < n and
/// Phi^{(n)}(0) = 1, built by solving the initial-condition system on the
/// canonical basis x^s e^{mu x} (one code path for repeated eigenvalues).
/// cond_estimate, when given, receives a cheap LU-based condition estimate.
ExpPoly fundamental_function(const EigenvalueMultiset& lambda,
                             double* cond_estimate = nullptr);

/// Determinant of the (k+1)x(k+1) matrix with entries Phi^{(i+j)}(t).
cplx hankel_value(const EigenvalueMultiset& lambda, int k, double t);

/// Evaluates Phi_{n,k}(b-a) for k = 0..n and applies the nonzero threshold.
ChebyshevDiagnosis chebyshev_pair_test(const EigenvalueMultiset& lambda,
                                       double a, double b);

/// Samples Phi_{n,k}(x-a) on a uniform grid over (a,b] (with one bisection
/// refinement around sign changes) and reports the window certificate.
ChebyshevDiagnosis chebyshev_interval_test(const EigenvalueMultiset& lambda,
                                           double a, double b,
                                           int samples = 512);

}  // namespace expbern
