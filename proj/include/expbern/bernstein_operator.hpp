#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "expbern/bernstein_basis.hpp"

namespace expbern {

/// Generalized Bernstein operator B f = sum_k alpha_k f(t_k) p_k with a
/// designated fixed pair of exponentials (or e^{l0 x}, x e^{l0 x} in the
/// confluent case). Non-monotone nodes and non-positive weights are flags,
/// not errors: both configurations are representable.
struct BernsteinOperator {
    BernsteinBasis basis;
    cplx fixed0, fixed1;  // equal in the confluent case
    bool confluent = false;
    std::vector<double> nodes;        // t_0..t_n, t_0 = a, t_n = b
    std::vector<double> weights;      // alpha_0..alpha_n, alpha_0 = 1
    std::vector<double> step_ratios;  // e^{(l0-l1)(t_k - t_{k-1})}, k = 1..n
    bool nodes_ordered = false;
    bool weights_positive = false;

    double a() const { return basis.a; }
    double b() const { return basis.b; }
    int degree() const { return basis.degree(); }

    double apply(const std::function<double(double)>& f, double x) const;
    /// Sample-table variant; every node must be covered within a tolerance
    /// of 1e-9 (b-a). Throws Error listing missing nodes.
    double apply(const std::vector<std::pair<double, double>>& table,
                 double x) const;
};

/// Main construction: nodes from the ratios of the two d-coefficient
/// families (drop fixed0 / drop fixed1) and weights from the running
/// products. Requires fixed0 < fixed1, both real and contained in lambda.
BernsteinOperator build_operator(const EigenvalueMultiset& lambda, double a,
                                 double b, std::pair<cplx, cplx> fix);

/// Confluent case fixing e^{l0 x} and x e^{l0 x} (l0 of multiplicity >= 2):
/// builds perturbed operators for each eps in the schedule and extrapolates
/// nodes and weights linearly in eps from the two smallest successful
/// levels. Extrapolations from the last two level pairs must agree within
/// 1e-5, otherwise Error("confluent limit unresolved").
BernsteinOperator build_operator_confluent(
    const EigenvalueMultiset& lambda, double a, double b, cplx fix_double,
    const std::vector<double>& eps_schedule = {1e-2, 1e-3, 1e-4});

/// Closed-form operator for the equidistant spectrum: t_k = a + k(b-a)/n,
/// weights n!/(n-k)! omega^k e^{-lambda0 k(b-a)/n} / (e^{omega(b-a)}-1)^k.
/// Fixes e^{lambda0 x} and e^{lambda_n x}.
BernsteinOperator equidistant_operator(cplx lambda0, cplx omega, int n,
                                       double a, double b);

/// Relative sup-norm residuals of the two fixed functions on a grid.
std::pair<double, double> fixed_point_residuals(const BernsteinOperator& op,
                                                int grid);

struct MuntzSystem {
    EigenvalueMultiset lambda;
    double a, b;  // transformed interval [ln a, ln b]
};

/// Muntz powers x^{lambda_k} on [a,b], a > 0, mapped to exponentials on
/// [ln a, ln b] via x = e^t.
MuntzSystem muntz_to_exponential(const std::vector<double>& exponents,
                                 double a, double b);

}  // namespace expbern
