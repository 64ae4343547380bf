#include "expbern/fundamental.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace expbern {

namespace {

// Determinants of the nested Hankel matrices H_k = (Phi^{(i+j)}(t))_{0<=i,j<=k}
// for k = 0..kmax, from the derivative list tay = (Phi(t), ..., Phi^{(2kmax)}(t)).
// The nonzero threshold is |det| > hankel_rel * scale^{k+1} with scale taken
// from the entries of H_{k+1}; the k-th matrix alone would make the rule
// self-referencing at k = 0 (a vanishing Phi(t) would set its own scale).
struct HankelRow {
    cplx det;
    double scale;
};

std::vector<HankelRow> hankel_dets(const std::vector<cplx>& tay, int kmax) {
    std::vector<HankelRow> out;
    out.reserve(kmax + 1);
    for (int k = 0; k <= kmax; ++k) {
        Eigen::MatrixXcd H(k + 1, k + 1);
        for (int i = 0; i <= k; ++i)
            for (int j = 0; j <= k; ++j) H(i, j) = tay[i + j];
        double scale = 0.0;
        int top = std::min(2 * (k + 1), 2 * kmax);
        for (int i = 0; i <= top; ++i) scale = std::max(scale, std::abs(tay[i]));
        out.push_back({Eigen::PartialPivLU<Eigen::MatrixXcd>(H).determinant(), scale});
    }
    return out;
}

double threshold(const HankelRow& row, int k) {
    return tol::hankel_rel * std::pow(row.scale, double(k + 1));
}

}  // namespace

ExpPoly fundamental_function(const EigenvalueMultiset& lambda,
                             double* cond_estimate) {
    const int dim = lambda.dimension();
    // Canonical basis x^s e^{mu x}; row i holds the i-th derivative at 0:
    // falling(i,s) * mu^(i-s) for i >= s, zero otherwise.
    std::vector<std::pair<cplx, int>> basis;
    for (const auto& e : lambda.entries())
        for (int s = 0; s < e.multiplicity; ++s) basis.emplace_back(e.value, s);

    Eigen::MatrixXcd A(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            auto [mu, s] = basis[j];
            A(i, j) = (i >= s) ? falling(i, s) * ipow(mu, i - s) : cplx(0.0);
        }
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);
    rhs(dim - 1) = 1.0;

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    Eigen::VectorXcd diag = lu.matrixLU().diagonal();
    double dmax = 0.0, dmin = infinity;
    for (int i = 0; i < dim; ++i) {
        dmax = std::max(dmax, std::abs(diag(i)));
        dmin = std::min(dmin, std::abs(diag(i)));
    }
    double cond = (dmin > 0.0) ? dmax / dmin : infinity;
    if (cond_estimate) *cond_estimate = cond;
    if (!(dmin > dmax * 1e-15) || !std::isfinite(cond))
        throw Error("fundamental_function: singular initial-condition system for " +
                    lambda.to_string() + " (condition estimate " +
                    format_double(cond) + "); canonicalization bug?");

    Eigen::VectorXcd c = lu.solve(rhs);
    ExpPoly phi;
    for (int j = 0; j < dim; ++j) {
        auto [mu, s] = basis[j];
        std::vector<cplx> coeff(s + 1, 0.0);
        coeff[s] = c(j);
        phi.add_term(mu, coeff);
    }
    return phi;
}

cplx hankel_value(const EigenvalueMultiset& lambda, int k, double t) {
    const int n = lambda.degree();
    if (k < 0 || k > n)
        throw std::invalid_argument("hankel_value: need 0 <= k <= n");
    ExpPoly phi = fundamental_function(lambda);
    return hankel_dets(phi.taylor_derivatives(t, 2 * k), k)[k].det;
}

namespace {

ChebyshevDiagnosis make_diagnosis(const EigenvalueMultiset& lambda, double a,
                                  double b) {
    ChebyshevDiagnosis d;
    d.a = a;
    d.b = b;
    d.n = lambda.degree();
    d.conjugate_closed = lambda.is_conjugate_closed();
    double M = lambda.max_imag();
    d.window_bound = (M <= lambda.eps()) ? infinity : M_PI / M;
    return d;
}

void fill_endpoint_values(ChebyshevDiagnosis& d, const ExpPoly& phi) {
    const int n = d.n;
    auto rows = hankel_dets(phi.taylor_derivatives(d.b - d.a, 2 * n), n);
    d.pair_ok = true;
    for (int k = 0; k <= n; ++k) {
        d.hankel_values.push_back(rows[k].det);
        double thr = threshold(rows[k], k);
        double mag = std::abs(rows[k].det);
        if (mag <= thr) {
            d.pair_ok = false;
            if (mag > tol::near_zero_band * thr)
                d.near_zero_flags.push_back({k, d.b - d.a});
        }
    }
}

}  // namespace

ChebyshevDiagnosis chebyshev_pair_test(const EigenvalueMultiset& lambda,
                                       double a, double b) {
    if (a == b) throw std::invalid_argument("chebyshev_pair_test: need a != b");
    ChebyshevDiagnosis d = make_diagnosis(lambda, a, b);
    fill_endpoint_values(d, fundamental_function(lambda));
    return d;
}

ChebyshevDiagnosis chebyshev_interval_test(const EigenvalueMultiset& lambda,
                                           double a, double b, int samples) {
    if (!(a < b)) throw std::invalid_argument("chebyshev_interval_test: need a < b");
    if (samples < 2)
        throw std::invalid_argument("chebyshev_interval_test: need samples >= 2");

    ChebyshevDiagnosis d = make_diagnosis(lambda, a, b);
    ExpPoly phi = fundamental_function(lambda);
    fill_endpoint_values(d, phi);

    const int n = d.n;
    const bool use_sign = d.conjugate_closed;  // Hankel values are real then

    auto rows_at = [&](double x) {
        return hankel_dets(phi.taylor_derivatives(x - a, 2 * n), n);
    };
    // Phi_{n,k}(x-a) vanishes at x = a to order (k+1)(n-k) by construction;
    // the zero threshold near a shrinks at exactly that rate so that the
    // structural boundary zero is not mistaken for an interior one.
    auto local_threshold = [&](const HankelRow& row, int k, double x) {
        double boundary =
            std::pow(std::min(1.0, (x - a) / (b - a)), double((k + 1) * (n - k)));
        return threshold(row, k) * boundary;
    };
    auto value_at = [&](int k, double x) {
        return hankel_dets(phi.taylor_derivatives(x - a, 2 * k), k)[k].det;
    };

    // Sampled values at noise level are indeterminate, not certified zeros;
    // definite "zero" verdicts come only from sign changes between clean
    // values and from refined tangential dips.
    bool any_zero = false, any_band = false;

    std::vector<std::vector<cplx>> vals(n + 1);
    std::vector<std::vector<bool>> clean(n + 1);
    std::vector<double> xs;
    for (int i = 1; i <= samples; ++i) {
        double x = a + (b - a) * i / samples;
        xs.push_back(x);
        auto rows = rows_at(x);
        for (int k = 0; k <= n; ++k) {
            vals[k].push_back(rows[k].det);
            bool ok = std::abs(rows[k].det) > local_threshold(rows[k], k, x);
            clean[k].push_back(ok);
            if (!ok) {
                any_band = true;
                d.near_zero_flags.push_back({k, x});
            }
        }
    }

    for (int k = 0; k <= n && !any_zero; ++k) {
        for (std::size_t i = 1; i < xs.size(); ++i) {
            if (use_sign && clean[k][i] && clean[k][i - 1] &&
                std::signbit(vals[k][i].real()) !=
                    std::signbit(vals[k][i - 1].real())) {
                // One bisection refinement localizes the crossing; a sign
                // change between clean sampled values already implies a zero.
                double mid = 0.5 * (xs[i - 1] + xs[i]);
                cplx mv = value_at(k, mid);
                double where =
                    std::signbit(mv.real()) == std::signbit(vals[k][i - 1].real())
                        ? 0.5 * (mid + xs[i])
                        : 0.5 * (xs[i - 1] + mid);
                any_zero = true;
                d.near_zero_flags.push_back({k, where});
                break;
            }
            // Tangential zeros never change sign; refine local minima of
            // |det| that dip well below both neighbours.
            if (i + 1 < xs.size()) {
                double m0 = std::abs(vals[k][i - 1]), m1 = std::abs(vals[k][i]),
                       m2 = std::abs(vals[k][i + 1]);
                if (m1 <= m0 && m1 <= m2 && m1 < 0.5 * std::max(m0, m2)) {
                    double lo = xs[i - 1], hi = xs[i + 1];
                    for (int it = 0; it < 80; ++it) {
                        double u = lo + (hi - lo) / 3.0, v = hi - (hi - lo) / 3.0;
                        if (std::abs(value_at(k, u)) < std::abs(value_at(k, v)))
                            hi = v;
                        else
                            lo = u;
                    }
                    double xm = 0.5 * (lo + hi);
                    auto rows = rows_at(xm);
                    double mag = std::abs(rows[k].det);
                    double thr = local_threshold(rows[k], k, xm);
                    if (mag <= tol::near_zero_band * thr) {
                        any_zero = true;
                        d.near_zero_flags.push_back({k, xm});
                        break;
                    }
                    if (mag <= thr) {
                        any_band = true;
                        d.near_zero_flags.push_back({k, xm});
                    }
                }
            }
        }
    }

    if (any_zero)
        d.interval_ok = false;
    else if (any_band)
        d.interval_ok = std::nullopt;
    else
        d.interval_ok = true;
    return d;
}

}  // namespace expbern
