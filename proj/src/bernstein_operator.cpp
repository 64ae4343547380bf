#include "expbern/bernstein_operator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace expbern {

namespace {

void set_flags(BernsteinOperator& op) {
    op.nodes_ordered = true;
    for (std::size_t k = 0; k + 1 < op.nodes.size(); ++k)
        if (!(op.nodes[k] < op.nodes[k + 1])) op.nodes_ordered = false;
    op.weights_positive =
        std::all_of(op.weights.begin(), op.weights.end(),
                    [](double w) { return w > 0.0; });
}

void check_endpoint(const BernsteinOperator& op) {
    // The landing error grows with eigenvalue clustering; well-separated
    // spectra land within 1e-10, tightly spaced ones may accumulate ~1e-6.
    double scale = std::max(1.0, op.b() - op.a());
    if (std::abs(op.nodes.back() - op.b()) > 1e-5 * scale)
        throw Error("operator construction: t_n = " +
                    format_double(op.nodes.back()) + " does not land on b = " +
                    format_double(op.b()));
}

double real_fix(cplx v, const char* which, double eps) {
    if (std::abs(v.imag()) > eps)
        throw std::invalid_argument(std::string("build_operator: fixed eigenvalue ") +
                                    which + " must be real, got " + format_complex(v));
    return v.real();
}

}  // namespace

double BernsteinOperator::apply(const std::function<double(double)>& f,
                                double x) const {
    cplx total = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k)
        total += weights[k] * f(nodes[k]) * basis.at(k).eval(x);
    return require_real(total, "operator value", 1e-7);
}

double BernsteinOperator::apply(
    const std::vector<std::pair<double, double>>& table, double x) const {
    const double tol_node = 1e-9 * (b() - a());
    std::vector<double> fvals(nodes.size());
    std::string missing;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        bool found = false;
        for (const auto& [t, v] : table) {
            if (std::abs(t - nodes[k]) <= tol_node) {
                fvals[k] = v;
                found = true;
                break;
            }
        }
        if (!found) missing += (missing.empty() ? "" : ", ") + format_double(nodes[k]);
    }
    if (!missing.empty())
        throw Error("apply: sample table misses nodes " + missing);
    cplx total = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k)
        total += weights[k] * fvals[k] * basis.at(k).eval(x);
    return require_real(total, "operator value", 1e-7);
}

BernsteinOperator build_operator(const EigenvalueMultiset& lambda, double a,
                                 double b, std::pair<cplx, cplx> fix) {
    double l0 = real_fix(fix.first, "lambda0", lambda.eps());
    double l1 = real_fix(fix.second, "lambda1", lambda.eps());
    if (!(l0 < l1))
        throw std::invalid_argument("build_operator: need lambda0 < lambda1, got " +
                                    format_double(l0) + " and " + format_double(l1));
    if (!lambda.contains(fix.first) || !lambda.contains(fix.second))
        throw std::invalid_argument(
            "build_operator: fixed eigenvalues must belong to the spectrum " +
            lambda.to_string());

    const int n = lambda.degree();
    BernsteinOperator op{build_basis(lambda, a, b), cplx(l0), cplx(l1)};

    // d-limits for the two reduced systems; their ratios give the node
    // steps, the running product of the drop-lambda0 family the weights.
    BernsteinBasis red0 = build_basis(lambda.without(fix.first), a, b);
    BernsteinBasis red1 = build_basis(lambda.without(fix.second), a, b);
    std::vector<cplx> dtil(n), dcap(n);
    for (int k = 0; k < n; ++k) {
        ExpPoly dp = op.basis.at(k).derivative(1);
        dtil[k] = limit_ratio(dp, red0.at(k), b, n - k - 1);
        dcap[k] = limit_ratio(dp, red1.at(k), b, n - k - 1);
    }

    op.nodes.assign(1, a);
    for (int k = 1; k <= n; ++k) {
        cplx rz = dtil[k - 1] / dcap[k - 1];
        double r = require_real(rz, "node step ratio d~/D");
        if (!(r > 0.0))
            throw Error("build_operator: node step ratio is not positive at k=" +
                        std::to_string(k) + ": " + format_double(r));
        op.step_ratios.push_back(r);
        op.nodes.push_back(op.nodes.back() + std::log(r) / (l0 - l1));
    }

    op.weights.assign(1, 1.0);
    cplx prod = 1.0;
    for (int k = 1; k <= n; ++k) {
        prod *= dtil[k - 1];
        cplx w = std::exp(-l0 * (op.nodes[k] - a)) *
                 ((k % 2 == 0) ? 1.0 : -1.0) * prod;
        op.weights.push_back(require_real(w, "weight alpha_k"));
    }

    check_endpoint(op);
    set_flags(op);
    return op;
}

BernsteinOperator build_operator_confluent(const EigenvalueMultiset& lambda,
                                           double a, double b, cplx fix_double,
                                           const std::vector<double>& eps_schedule) {
    double l0 = real_fix(fix_double, "lambda0", lambda.eps());
    if (lambda.multiplicity_of(fix_double) < 2)
        throw std::invalid_argument(
            "build_operator_confluent: fixed eigenvalue needs multiplicity >= 2");
    if (eps_schedule.empty())
        throw std::invalid_argument("build_operator_confluent: empty eps schedule");

    std::vector<double> sched = eps_schedule;
    std::sort(sched.begin(), sched.end(), std::greater<>());

    struct Level {
        double eps;
        std::vector<double> nodes, weights;
    };
    std::vector<Level> levels;
    std::string failures;
    for (double eps : sched) {
        if (!(eps > 0.0))
            throw std::invalid_argument("build_operator_confluent: eps must be > 0");
        try {
            std::vector<cplx> values = lambda.without(fix_double).expanded();
            values.push_back(l0 + eps);
            EigenvalueMultiset perturbed =
                EigenvalueMultiset::canonicalize(values, lambda.eps());
            BernsteinOperator pert =
                build_operator(perturbed, a, b, {cplx(l0), cplx(l0 + eps)});
            levels.push_back({eps, pert.nodes, pert.weights});
        } catch (const std::exception& ex) {
            failures += std::string(failures.empty() ? "" : "; ") + "eps=" +
                        format_double(eps) + ": " + ex.what();
        }
    }
    if (levels.size() < 2)
        throw Error("build_operator_confluent: perturbed construction failed (" +
                    (failures.empty() ? std::string("fewer than two eps levels")
                                      : failures) +
                    ")");

    // Linear extrapolation to eps = 0 from a pair of levels.
    auto extrapolate = [](const Level& u, const Level& v) {
        Level out{0.0, {}, {}};
        for (std::size_t i = 0; i < u.nodes.size(); ++i)
            out.nodes.push_back(v.nodes[i] +
                                (v.nodes[i] - u.nodes[i]) * v.eps / (u.eps - v.eps));
        for (std::size_t i = 0; i < u.weights.size(); ++i)
            out.weights.push_back(v.weights[i] + (v.weights[i] - u.weights[i]) *
                                                     v.eps / (u.eps - v.eps));
        return out;
    };

    Level limit = extrapolate(levels[levels.size() - 2], levels.back());
    if (levels.size() >= 3) {
        // Non-Cauchy guard on the nodes; the weights carry the node scale
        // times n!/(n-k)! and are validated through the reproduction
        // residuals instead.
        Level check = extrapolate(levels[levels.size() - 3],
                                  levels[levels.size() - 2]);
        double dev = 0.0;
        for (std::size_t i = 0; i < limit.nodes.size(); ++i)
            dev = std::max(dev, std::abs(limit.nodes[i] - check.nodes[i]));
        if (dev > 1e-5 * std::max(1.0, b - a))
            throw Error("build_operator_confluent: limit unresolved, node "
                        "extrapolations from the last two level pairs differ by " +
                        format_double(dev));
    }

    BernsteinOperator op{build_basis(lambda, a, b), cplx(l0), cplx(l0)};
    op.confluent = true;
    op.nodes = std::move(limit.nodes);
    op.weights = std::move(limit.weights);
    op.nodes.front() = a;
    op.weights.front() = 1.0;
    // No second eigenvalue, so no step ratios; node gaps are reported via
    // the nodes themselves.
    check_endpoint(op);
    set_flags(op);
    return op;
}

BernsteinOperator equidistant_operator(cplx lambda0, cplx omega, int n,
                                       double a, double b) {
    if (n < 1) throw std::invalid_argument("equidistant_operator: need n >= 1");
    BernsteinOperator op{equidistant_basis(lambda0, omega, n, a, b), lambda0,
                         lambda0 + double(n) * omega};

    const double step = (b - a) / n;
    cplx eod = std::exp(omega * (b - a)) - 1.0;
    cplx factor_base = omega * std::exp(-lambda0 * step) / eod;
    const bool real_pair = std::abs(op.fixed0.imag()) <= tol::merge_eps &&
                           std::abs(op.fixed1.imag()) <= tol::merge_eps;
    op.nodes.assign(1, a);
    op.weights.assign(1, 1.0);
    cplx w = 1.0;
    for (int k = 1; k <= n; ++k) {
        op.nodes.push_back(a + k * step);
        w *= double(n - k + 1) * factor_base;
        op.weights.push_back(require_real(w, "equidistant weight alpha_k"));
        // The step ratio e^{(l0-l1)(t_k - t_{k-1})} is only real when the
        // fixed pair is; conjugate-pair operators leave it unset.
        if (real_pair)
            op.step_ratios.push_back(
                std::exp((op.fixed0.real() - op.fixed1.real()) * step));
    }
    set_flags(op);
    return op;
}

std::pair<double, double> fixed_point_residuals(const BernsteinOperator& op,
                                                int grid) {
    if (grid < 2) throw std::invalid_argument("fixed_point_residuals: grid >= 2");
    auto residual = [&](const std::function<cplx(double)>& f) {
        double sup_err = 0.0, sup_f = 0.0;
        for (double x : linspace(op.a(), op.b(), grid)) {
            cplx bf = 0.0;
            for (std::size_t k = 0; k < op.nodes.size(); ++k)
                bf += op.weights[k] * f(op.nodes[k]) * op.basis.at(k).eval(x);
            sup_err = std::max(sup_err, std::abs(bf - f(x)));
            sup_f = std::max(sup_f, std::abs(f(x)));
        }
        return sup_err / sup_f;
    };
    cplx l0 = op.fixed0, l1 = op.fixed1;
    double r0 = residual([&](double x) { return std::exp(l0 * x); });
    double r1 = op.confluent
                    ? residual([&](double x) { return x * std::exp(l0 * x); })
                    : residual([&](double x) { return std::exp(l1 * x); });
    return {r0, r1};
}

MuntzSystem muntz_to_exponential(const std::vector<double>& exponents, double a,
                                 double b) {
    if (!(a > 0.0))
        throw std::invalid_argument("muntz_to_exponential: the transformation "
                                    "x = e^t requires a > 0");
    if (!(b > a)) throw std::invalid_argument("muntz_to_exponential: need b > a");
    if (exponents.empty())
        throw std::invalid_argument("muntz_to_exponential: empty exponent list");
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] < 0.0)
            throw std::invalid_argument("muntz_to_exponential: exponents must be >= 0");
        if (i > 0 && !(exponents[i] > exponents[i - 1]))
            throw std::invalid_argument(
                "muntz_to_exponential: exponents must be strictly increasing");
    }
    std::vector<cplx> values(exponents.begin(), exponents.end());
    return {EigenvalueMultiset::canonicalize(values), std::log(a), std::log(b)};
}

}  // namespace expbern
