#include "expbern/convergence.hpp"

#include <algorithm>
#include <cmath>

namespace expbern {

FamilySpec FamilySpec::equidistant(double lambda0, double omega_total, double a,
                                   double b) {
    if (omega_total == 0.0)
        throw std::invalid_argument("equidistant family: omega_total must be nonzero");
    FamilySpec f;
    f.kind = Kind::equidistant;
    f.lambda0 = lambda0;
    f.omega_total = omega_total;
    f.a = a;
    f.b = b;
    return f;
}

FamilySpec FamilySpec::morigi_neamtu(cplx mu0, cplx mu1, double a, double b) {
    FamilySpec f;
    f.kind = Kind::morigi_neamtu;
    f.mu0 = mu0;
    f.mu1 = mu1;
    f.a = a;
    f.b = b;
    // Validate the endpoints once; per-n spectra reuse them.
    morigi_neamtu_family(mu0, mu1, 1);
    return f;
}

FamilySpec FamilySpec::classical_family(double lambda0, double a, double b) {
    FamilySpec f;
    f.kind = Kind::custom;
    f.classical = true;
    f.lambda0 = lambda0;
    f.a = a;
    f.b = b;
    f.generator = [lambda0](int n) {
        return EigenvalueMultiset({{cplx(lambda0), n + 1}});
    };
    return f;
}

FamilySpec FamilySpec::custom(std::function<EigenvalueMultiset(int)> gen,
                              double a, double b) {
    FamilySpec f;
    f.kind = Kind::custom;
    f.generator = std::move(gen);
    f.a = a;
    f.b = b;
    return f;
}

EigenvalueMultiset FamilySpec::spectrum(int n) const {
    if (n < 1) throw std::invalid_argument("family spectrum: need n >= 1");
    switch (kind) {
        case Kind::equidistant: {
            std::vector<cplx> values;
            for (int j = 0; j <= n; ++j)
                values.emplace_back(lambda0 + j * omega_total / n, 0.0);
            return EigenvalueMultiset::canonicalize(values);
        }
        case Kind::morigi_neamtu:
            return morigi_neamtu_family(mu0, mu1, n);
        case Kind::custom:
            if (!generator)
                throw std::invalid_argument("custom family: missing generator");
            return generator(n);
    }
    throw std::logic_error("unreachable");
}

int FamilySpec::operator_degree(int n) const {
    return kind == Kind::morigi_neamtu ? 2 * n : n;
}

EigenvalueMultiset morigi_neamtu_family(cplx mu0, cplx mu1, int n) {
    if (n < 1) throw std::invalid_argument("morigi_neamtu_family: need n >= 1");
    if (std::abs(mu0 - mu1) <= tol::merge_eps)
        throw std::invalid_argument("morigi_neamtu_family: mu0 and mu1 must differ");
    bool both_real = std::abs(mu0.imag()) <= tol::merge_eps &&
                     std::abs(mu1.imag()) <= tol::merge_eps;
    bool conjugates = std::abs(mu1 - std::conj(mu0)) <= tol::merge_eps;
    if (!both_real && !conjugates)
        throw std::invalid_argument(
            "morigi_neamtu_family: endpoints must be real or complex conjugates");
    cplx delta = mu1 - mu0;
    std::vector<cplx> values;
    for (int j = 0; j <= 2 * n; ++j)
        values.push_back(mu0 + double(j) * delta / (2.0 * n));
    return EigenvalueMultiset::canonicalize(values);
}

namespace {

// Direct evaluation of the closed-form operator for equidistant spectra
// (lambda_j = lambda0 + j omega) and their omega -> 0 polynomial limit.
// The binomially expanded ExpPoly form is exponentially ill-conditioned in
// the degree, so desk-scale studies evaluate the product form instead.
struct ClosedFormOperator {
    int degree = 0;
    double a = 0.0, b = 0.0;
    cplx lambda0, omega;  // omega == 0: polynomial case
    std::vector<double> nodes, weights;

    static ClosedFormOperator equidistant(cplx lambda0, cplx omega, int degree,
                                          double a, double b) {
        ClosedFormOperator op;
        op.degree = degree;
        op.a = a;
        op.b = b;
        op.lambda0 = lambda0;
        op.omega = omega;
        double step = (b - a) / degree;
        cplx factor;
        if (omega == cplx(0.0)) {
            factor = std::exp(-lambda0 * step) / (b - a);
        } else {
            cplx eod = std::exp(omega * (b - a)) - 1.0;
            if (std::abs(eod) <= 1e-12)
                throw Error("closed-form operator: degenerate denominator");
            factor = omega * std::exp(-lambda0 * step) / eod;
        }
        cplx w = 1.0;
        for (int k = 0; k <= degree; ++k) {
            op.nodes.push_back(a + k * step);
            if (k > 0) w *= double(degree - k + 1) * factor;
            op.weights.push_back(require_real(w, "closed-form weight"));
        }
        return op;
    }

    double basis_eval(int k, double x) const {
        cplx v;
        if (omega == cplx(0.0)) {
            v = std::exp(lambda0 * (x - a)) * ipow(cplx(x - a), k) *
                ipow(cplx(b - x), degree - k) / falling(k, k) /
                ipow(cplx(b - a), degree - k);
        } else {
            cplx u = std::exp(omega * (x - a)) - 1.0;
            cplx r = (1.0 - std::exp(omega * (x - b))) /
                     (1.0 - std::exp(omega * (a - b)));
            v = std::exp(lambda0 * (x - a)) / falling(k, k) * ipow(u / omega, k) *
                ipow(r, degree - k);
        }
        return require_real(v, "closed-form basis value", 1e-7);
    }

    double apply(const std::function<double(double)>& f, double x) const {
        double total = 0.0;
        for (int k = 0; k <= degree; ++k)
            total += weights[k] * f(nodes[k]) * basis_eval(k, x);
        return total;
    }
};

struct DiagnosticRoles {
    cplx l0, l1, l2;
};

DiagnosticRoles diagnostic_roles(const FamilySpec& family, int n) {
    auto pick = [&](cplx l0, cplx l1, cplx l2) {
        for (cplx v : {l0, l1, l2})
            if (std::abs(v.imag()) > tol::merge_eps)
                throw Error("hypothesis_report: needs three distinct real "
                            "eigenvalues (lambda0, lambda1, lambda2)");
        if (std::abs(l0 - l1) <= tol::merge_eps ||
            std::abs(l0 - l2) <= tol::merge_eps ||
            std::abs(l1 - l2) <= tol::merge_eps)
            throw Error("hypothesis_report: diagnostic eigenvalues must be distinct");
        return DiagnosticRoles{l0, l1, l2};
    };
    switch (family.kind) {
        case FamilySpec::Kind::equidistant:
            if (n < 2)
                throw Error("hypothesis_report: equidistant family needs n >= 2");
            return pick(family.lambda0, family.lambda0 + family.omega_total,
                        family.lambda0 + (n / 2) * family.omega_total / n);
        case FamilySpec::Kind::morigi_neamtu:
            return pick(family.mu0, family.mu1, 0.5 * (family.mu0 + family.mu1));
        case FamilySpec::Kind::custom: {
            EigenvalueMultiset lam = family.spectrum(n);
            std::vector<double> reals = lam.real_values();
            if (family.lambda2_override) {
                if (reals.size() < 2)
                    throw Error("hypothesis_report: needs two real eigenvalues "
                                "besides lambda2");
                return pick(reals[0], reals[1], *family.lambda2_override);
            }
            if (reals.size() < 3)
                throw Error("hypothesis_report: needs three distinct real "
                            "eigenvalues (lambda0, lambda1, lambda2)");
            return pick(reals[0], reals[1], reals[2]);
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

ConvergenceEntry hypothesis_report(const FamilySpec& family, int n) {
    DiagnosticRoles roles = diagnostic_roles(family, n);
    EigenvalueMultiset lam = family.spectrum(n);
    const int N = lam.degree();
    const double a = family.a, b = family.b;

    ConvergenceEntry entry;
    entry.n = n;

    BernsteinOperator op = build_operator(lam, a, b, {roles.l0, roles.l1});
    entry.mesh = 0.0;
    for (int k = 1; k <= N; ++k)
        entry.mesh = std::max(entry.mesh, op.nodes[k] - op.nodes[k - 1]);

    // a(n,k) = d~_k / D_k is already encoded in the node-step ratios; the
    // b(n,k) array needs the third reduced system.
    BernsteinBasis red0 = build_basis(lam.without(roles.l0), a, b);
    BernsteinBasis red2 = build_basis(lam.without(roles.l2), a, b);
    entry.a_vals.resize(N);
    entry.b_vals.resize(N);
    for (int k = 0; k < N; ++k) {
        entry.a_vals[k] = op.step_ratios[k];
        entry.b_vals[k] = require_real(
            limit_ratio(red2.at(k), red0.at(k), b, N - 1 - k), "b(n,k)");
    }

    double l0 = roles.l0.real(), l1 = roles.l1.real(), l2 = roles.l2.real();
    entry.log_ratio_dev = 0.0;
    entry.ratio_dev = 0.0;
    for (int k = 0; k < N; ++k) {
        double gap = op.nodes[k] - op.nodes[k + 1];
        entry.log_ratio_dev = std::max(
            entry.log_ratio_dev,
            std::abs(std::log(entry.b_vals[k]) / gap - (l2 - l0)));
        entry.ratio_dev = std::max(
            entry.ratio_dev, std::abs((1.0 - entry.b_vals[k]) /
                                          (1.0 - entry.a_vals[k]) -
                                      (l2 - l0) / (l1 - l0)));
    }
    entry.hypothesis_ok = true;
    return entry;
}

ConvergenceReport convergence_study(const FamilySpec& family,
                                    const std::function<double(double)>& f,
                                    const std::vector<int>& n_list, int grid) {
    if (grid < 2) throw std::invalid_argument("convergence_study: grid >= 2");
    ConvergenceReport report;
    const double a = family.a, b = family.b;
    std::vector<double> xs = linspace(a, b, grid);

    for (int n : n_list) {
        ConvergenceEntry entry;
        entry.n = n;
        try {
            const int N = family.operator_degree(n);
            double sup = 0.0;
            if (family.kind == FamilySpec::Kind::equidistant ||
                family.kind == FamilySpec::Kind::morigi_neamtu ||
                family.classical) {
                cplx l0, omega;
                if (family.kind == FamilySpec::Kind::equidistant) {
                    l0 = family.lambda0;
                    omega = cplx(family.omega_total / n, 0.0);
                } else if (family.kind == FamilySpec::Kind::morigi_neamtu) {
                    l0 = family.mu0;
                    omega = (family.mu1 - family.mu0) / double(2 * n);
                } else {
                    l0 = family.lambda0;
                    omega = 0.0;
                }
                ClosedFormOperator op =
                    ClosedFormOperator::equidistant(l0, omega, N, a, b);
                for (double x : xs)
                    sup = std::max(sup, std::abs(op.apply(f, x) - f(x)));
                entry.mesh = (b - a) / N;
            } else {
                EigenvalueMultiset lam = family.spectrum(n);
                std::vector<double> reals = lam.real_values();
                BernsteinOperator op = [&] {
                    if (reals.size() >= 2)
                        return build_operator(lam, a, b, {reals[0], reals[1]});
                    if (reals.size() == 1 && lam.multiplicity_of(reals[0]) >= 2)
                        return build_operator_confluent(lam, a, b, reals[0]);
                    throw Error("convergence_study: no usable fixed pair in " +
                                lam.to_string());
                }();
                for (double x : xs)
                    sup = std::max(sup, std::abs(op.apply(f, x) - f(x)));
                entry.mesh = 0.0;
                for (std::size_t k = 1; k < op.nodes.size(); ++k)
                    entry.mesh =
                        std::max(entry.mesh, op.nodes[k] - op.nodes[k - 1]);
            }
            entry.sup_error = sup;
        } catch (const std::exception& ex) {
            entry.note = ex.what();
            report.entries.push_back(entry);
            continue;
        }
        try {
            ConvergenceEntry hyp = hypothesis_report(family, n);
            entry.a_vals = std::move(hyp.a_vals);
            entry.b_vals = std::move(hyp.b_vals);
            entry.log_ratio_dev = hyp.log_ratio_dev;
            entry.ratio_dev = hyp.ratio_dev;
            entry.hypothesis_ok = true;
        } catch (const std::exception& ex) {
            entry.note = ex.what();
        }
        report.entries.push_back(entry);
    }
    return report;
}

std::function<double(double)> test_function(const std::string& name, double a,
                                            double b) {
    if (name == "abs_mid") {
        double mid = 0.5 * (a + b);
        return [mid](double x) { return std::abs(x - mid); };
    }
    if (name == "square") return [](double x) { return x * x; };
    if (name == "sin") return [](double x) { return std::sin(x); };
    if (name == "runge") return [](double x) { return 1.0 / (1.0 + 25.0 * x * x); };
    if (name == "exp") return [](double x) { return std::exp(x); };
    if (name.rfind("exp:", 0) == 0) {
        double lam = std::stod(name.substr(4));
        return [lam](double x) { return std::exp(lam * x); };
    }
    throw std::invalid_argument(
        "test_function: unknown name '" + name +
        "'; choices: abs_mid, square, sin, runge, exp, exp:<lambda>");
}

}  // namespace expbern
