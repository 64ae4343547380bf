#pragma once

#include <vector>

#include "expbern/exppoly.hpp"

namespace expbern {

/// Normalized Bernstein-like basis p_0..p_n for [a,b]: p_k has a zero of
/// order k at a, a zero of order n-k at b, and p_k^{(k)}(a) = 1.
struct BernsteinBasis {
    EigenvalueMultiset lambda;
    double a = 0.0, b = 0.0;
    std::vector<ExpPoly> functions;  // p_0 .. p_n
    // Recursion scalars, logged for reproducibility. alpha[k] is defined for
    // k = 0..n-1, beta[k] for k = 2..n (earlier slots are zero).
    std::vector<cplx> alpha;
    std::vector<cplx> beta;

    int degree() const { return static_cast<int>(functions.size()) - 1; }
    const ExpPoly& at(int k) const { return functions.at(k); }
};

/// Builds the basis by the derivative recursion on q_0(x) = Phi_n(x-a),
/// normalizing once at the end. Throws Error("not a Chebyshev pair ...")
/// naming the failing step when a denominator at b falls below threshold.
BernsteinBasis build_basis(const EigenvalueMultiset& lambda, double a, double b);

/// Closed-form basis for the equidistant spectrum lambda_j = lambda0 + j*omega,
/// expanded into ExpPoly terms. Requires omega != 0 and e^{omega(a-b)} != 1.
BernsteinBasis equidistant_basis(cplx lambda0, cplx omega, int n, double a, double b);

/// f^{(order)}(x0) / g^{(order)}(x0), after checking that all lower
/// derivatives of f and g vanish (relative threshold) and that the leading
/// derivative of g does not. Throws Error("order mismatch ...") otherwise.
cplx limit_ratio(const ExpPoly& f, const ExpPoly& g, double x0, int order);

/// The limits d_k = lim_{x->b} p'_{Lambda,k}(x) / p_{Lambda\drop,k}(x) for
/// k = 0..n-1, evaluated through the known zero orders at b.
std::vector<cplx> d_coefficients(const EigenvalueMultiset& lambda, double a,
                                 double b, cplx drop);

/// Coefficients beta with e^{(x-a) which} = sum_k beta_k p_{Lambda,k}(x):
/// beta_0 = 1 and beta_k = (-1)^k d_0...d_{k-1} with drop = which. Also
/// verifies the closure identity against p_{Lambda,n}(b).
std::vector<cplx> exp_in_basis(const EigenvalueMultiset& lambda, double a,
                               double b, cplx which);

/// The constant C with p_{Lambda\keep1,k} - p_{Lambda\keep0,k} =
/// C * p_{Lambda,k+1}, computed from the order-(k+1) zero at a. C is
/// provably nonzero; a below-threshold value throws.
cplx connection_constant(const EigenvalueMultiset& full, double a, double b,
                         int k, cplx keep0, cplx keep1);

}  // namespace expbern
