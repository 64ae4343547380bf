#include "expbern/bernstein_basis.hpp"

#include <algorithm>
#include <cmath>

#include "expbern/fundamental.hpp"

namespace expbern {

namespace {

// Relative nonzero test for the m-th derivative at an endpoint, using the
// same 1e-10 factor as the Hankel rule so the two failure modes agree.
// Derivative j is weighted by h^j/j! (its Taylor contribution at distance
// h = b-a); without the weighting, the naturally tiny low-order values of
// tightly clustered spectra would be mistaken for zeros.
bool endpoint_value_ok(const std::vector<cplx>& tay, std::size_t m, double h) {
    double scale = 0.0, weight = 1.0;
    std::vector<double> w(tay.size());
    for (std::size_t j = 0; j < tay.size(); ++j) {
        w[j] = std::abs(tay[j]) * weight;
        scale = std::max(scale, w[j]);
        weight *= std::abs(h) / double(j + 1);
    }
    return w[m] > tol::hankel_rel * scale;
}

}  // namespace

BernsteinBasis build_basis(const EigenvalueMultiset& lambda, double a, double b) {
    if (a == b) throw std::invalid_argument("build_basis: need a != b");
    const int n = lambda.degree();

    ExpPoly phi = fundamental_function(lambda);
    std::vector<ExpPoly> q;
    q.reserve(n + 1);
    q.push_back(phi.reparametrize(1.0, -a));  // q_0(x) = Phi_n(x-a)

    std::vector<cplx> alpha(std::max(n, 1), 0.0), beta(n + 1, 0.0);

    const double h = b - a;
    if (n >= 1) {
        auto t0 = q[0].taylor_derivatives(b, n);
        if (!endpoint_value_ok(t0, 0, h))
            throw Error("not a Chebyshev pair for {" + format_double(a) + "," +
                        format_double(b) + "}: q_0(b) below threshold (k=1)");
        alpha[0] = t0[1] / t0[0];
        ExpPoly q1 = q[0].derivative(1);
        q1.add_scaled(q[0], -alpha[0]);
        q.push_back(std::move(q1));
    }
    for (int k = 2; k <= n; ++k) {
        auto tk1 = q[k - 1].taylor_derivatives(b, std::max(k, n));
        auto tk2 = q[k - 2].taylor_derivatives(b, std::max(k - 2, n));
        if (!endpoint_value_ok(tk1, k - 1, h))
            throw Error("not a Chebyshev pair for {" + format_double(a) + "," +
                        format_double(b) + "}: q_{k-1}^{(k-1)}(b) below threshold (k=" +
                        std::to_string(k) + ")");
        if (!endpoint_value_ok(tk2, k - 2, h))
            throw Error("not a Chebyshev pair for {" + format_double(a) + "," +
                        format_double(b) + "}: q_{k-2}^{(k-2)}(b) below threshold (k=" +
                        std::to_string(k) + ")");
        beta[k] = tk1[k - 1] / tk2[k - 2];
        alpha[k - 1] = tk1[k] / tk1[k - 1];
        ExpPoly qk = q[k - 1].derivative(1);
        qk.add_scaled(q[k - 1], -(alpha[k - 1] - alpha[k - 2]));
        qk.add_scaled(q[k - 2], -beta[k]);
        q.push_back(std::move(qk));
    }

    // q_k has a zero of order n-k at a with unit leading derivative up to
    // rounding; normalize once at the end.
    BernsteinBasis basis{lambda, a, b, std::vector<ExpPoly>(n + 1), alpha, beta};
    for (int k = 0; k <= n; ++k) {
        auto ta = q[k].taylor_derivatives(a, n - k);
        cplx lead = ta[n - k];
        if (!endpoint_value_ok(ta, n - k, h))
            throw Error("build_basis: leading derivative of q_" + std::to_string(k) +
                        " at a below threshold; zero structure lost");
        ExpPoly p;
        p.add_scaled(q[k], 1.0 / lead);
        basis.functions[n - k] = std::move(p);
    }
    return basis;
}

BernsteinBasis equidistant_basis(cplx lambda0, cplx omega, int n, double a,
                                 double b) {
    if (omega == cplx(0.0))
        throw std::invalid_argument("equidistant_basis: omega must be nonzero");
    if (n < 0) throw std::invalid_argument("equidistant_basis: need n >= 0");
    cplx eab = std::exp(omega * (a - b));
    if (std::abs(1.0 - eab) <= 1e-12 * std::max(1.0, std::abs(eab)))
        throw Error("equidistant_basis: degenerate denominator, e^{omega(a-b)} = 1");

    std::vector<cplx> values;
    for (int j = 0; j <= n; ++j) values.push_back(lambda0 + double(j) * omega);
    EigenvalueMultiset lambda = EigenvalueMultiset::canonicalize(values);
    if (lambda.dimension() != n + 1)
        throw Error("equidistant_basis: omega too small, eigenvalues merged");

    BernsteinBasis basis{lambda, a, b, {}, {}, {}};
    basis.functions.reserve(n + 1);
    for (int k = 0; k <= n; ++k) {
        // e^{lambda0(x-a)}/(k! omega^k) (e^{omega(x-a)}-1)^k
        //   * ((1-e^{omega(x-b)})/(1-e^{omega(a-b)}))^{n-k}, expanded binomially.
        cplx denom = 1.0;
        for (int i = 0; i < k; ++i) denom *= omega;
        denom *= falling(k, k);  // k!
        denom *= ipow(1.0 - eab, n - k);
        ExpPoly p;
        for (int i = 0; i <= k; ++i) {
            for (int j = 0; j <= n - k; ++j) {
                double sign = ((k - i + j) % 2 == 0) ? 1.0 : -1.0;
                cplx c = binomial(k, i) * binomial(n - k, j) * sign *
                         std::exp(-omega * (double(i) * a + double(j) * b)) *
                         std::exp(-lambda0 * a) / denom;
                p.add_term(lambda0 + double(i + j) * omega, {c});
            }
        }
        basis.functions.push_back(std::move(p));
    }
    return basis;
}

cplx limit_ratio(const ExpPoly& f, const ExpPoly& g, double x0, int order) {
    if (order < 0) throw std::invalid_argument("limit_ratio: order must be >= 0");
    auto tf = f.taylor_derivatives(x0, order);
    auto tg = g.taylor_derivatives(x0, order);
    double mf = 0.0, mg = 0.0;
    for (cplx v : tf) mf = std::max(mf, std::abs(v));
    for (cplx v : tg) mg = std::max(mg, std::abs(v));
    for (int i = 0; i < order; ++i) {
        if (std::abs(tf[i]) > tol::limit_rel * mf)
            throw Error("limit_ratio: order mismatch, f^{(" + std::to_string(i) +
                        ")}(x0) = " + format_complex(tf[i]) + " is not negligible");
        if (std::abs(tg[i]) > tol::limit_rel * mg)
            throw Error("limit_ratio: order mismatch, g^{(" + std::to_string(i) +
                        ")}(x0) = " + format_complex(tg[i]) + " is not negligible");
    }
    if (std::abs(tg[order]) <= tol::limit_rel * mg || mg == 0.0)
        throw Error("limit_ratio: leading derivative of g below threshold");
    return tf[order] / tg[order];
}

std::vector<cplx> d_coefficients(const EigenvalueMultiset& lambda, double a,
                                 double b, cplx drop) {
    BernsteinBasis full = build_basis(lambda, a, b);
    BernsteinBasis reduced = build_basis(lambda.without(drop), a, b);
    const int n = lambda.degree();
    std::vector<cplx> d(n);
    for (int k = 0; k < n; ++k) {
        d[k] = limit_ratio(full.at(k).derivative(1), reduced.at(k), b, n - k - 1);
        if (std::abs(d[k]) <= 1e-12)
            throw Error("d_coefficients: d_" + std::to_string(k) +
                        " vanished; the limits are provably nonzero");
    }
    return d;
}

std::vector<cplx> exp_in_basis(const EigenvalueMultiset& lambda, double a,
                               double b, cplx which) {
    if (!lambda.contains(which))
        throw std::invalid_argument("exp_in_basis: eigenvalue " +
                                    format_complex(which) + " not in " +
                                    lambda.to_string());
    const int n = lambda.degree();
    std::vector<cplx> d = d_coefficients(lambda, a, b, which);
    std::vector<cplx> beta(n + 1);
    beta[0] = 1.0;
    cplx prod = 1.0;
    for (int k = 1; k <= n; ++k) {
        prod *= d[k - 1];
        beta[k] = ((k % 2 == 0) ? 1.0 : -1.0) * prod;
    }
    // Closure identity: (-1)^n d_0...d_{n-1} p_n(b) = e^{(b-a) which}.
    BernsteinBasis basis = build_basis(lambda, a, b);
    cplx lhs = ((n % 2 == 0) ? 1.0 : -1.0) * prod * basis.at(n).eval(b);
    cplx rhs = std::exp((b - a) * which);
    if (std::abs(lhs - rhs) > 1e-6 * std::max(1.0, std::abs(rhs)))
        throw Error("exp_in_basis: closure identity violated, " +
                    format_complex(lhs) + " vs " + format_complex(rhs));
    return beta;
}

cplx connection_constant(const EigenvalueMultiset& full, double a, double b,
                         int k, cplx keep0, cplx keep1) {
    if (std::abs(keep0 - keep1) <= full.eps())
        throw std::invalid_argument("connection_constant: keep0 and keep1 must differ");
    const int n = full.degree();
    if (k < 0 || k > n - 1)
        throw std::invalid_argument("connection_constant: need 0 <= k <= n-1");
    BernsteinBasis keeps0 = build_basis(full.without(keep1), a, b);
    BernsteinBasis keeps1 = build_basis(full.without(keep0), a, b);
    BernsteinBasis whole = build_basis(full, a, b);
    ExpPoly diff = keeps0.at(k) - keeps1.at(k);
    cplx c = limit_ratio(diff, whole.at(k + 1), a, k + 1);
    // A vanishing constant would mean two distinct spectra share a basis
    // function; treat values at rounding level as an error.
    double scale = std::max(keeps0.at(k).max_coeff(), keeps1.at(k).max_coeff()) /
                   std::max(whole.at(k + 1).max_coeff(), 1e-300);
    if (std::abs(c) <= 1e-10 * std::max(1.0, scale))
        throw Error("connection_constant: constant below threshold, " +
                    format_complex(c));
    return c;
}

}  // namespace expbern
