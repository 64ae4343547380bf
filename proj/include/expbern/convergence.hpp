#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "expbern/bernstein_operator.hpp"

namespace expbern {

/// A family of operators indexed by n. The equidistant family keeps the
/// endpoint lambda0 + omega_total fixed and shrinks the step to
/// omega_total/n; the Morigi-Neamtu family interpolates mu0..mu1 over 2n
/// steps. Custom families supply a spectrum generator per n.
struct FamilySpec {
    enum class Kind { equidistant, morigi_neamtu, custom };

    Kind kind = Kind::custom;
    double a = 0.0, b = 1.0;
    // equidistant parameters
    double lambda0 = 0.0, omega_total = 0.0;
    // morigi_neamtu parameters
    cplx mu0, mu1;
    // custom
    std::function<EigenvalueMultiset(int)> generator;
    bool classical = false;  // custom {lambda0 : n+1}, closed-form path
    std::optional<cplx> lambda2_override;  // third diagnostic eigenvalue

    static FamilySpec equidistant(double lambda0, double omega_total,
                                  double a, double b);
    static FamilySpec morigi_neamtu(cplx mu0, cplx mu1, double a, double b);
    static FamilySpec classical_family(double lambda0, double a, double b);
    static FamilySpec custom(std::function<EigenvalueMultiset(int)> gen,
                             double a, double b);

    EigenvalueMultiset spectrum(int n) const;
    int operator_degree(int n) const;  // 2n for morigi_neamtu, n otherwise
};

/// The spectrum lambda_j = mu0 + j (mu1-mu0)/(2n), j = 0..2n. mu0 and mu1
/// must be distinct and either both real or complex conjugates.
EigenvalueMultiset morigi_neamtu_family(cplx mu0, cplx mu1, int n);

/// Per-n diagnostics for the convergence hypotheses: the triangular arrays
/// a(n,k), b(n,k), the node mesh, and the deviations of log b(n,k)/(t_k -
/// t_{k+1}) from lambda2-lambda0 and of (1-b)/(1-a) from
/// (lambda2-lambda0)/(lambda1-lambda0).
struct ConvergenceEntry {
    int n = 0;
    double sup_error = std::numeric_limits<double>::quiet_NaN();
    double mesh = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> a_vals, b_vals;  // length = operator degree
    double log_ratio_dev = std::numeric_limits<double>::quiet_NaN();
    double ratio_dev = std::numeric_limits<double>::quiet_NaN();
    bool hypothesis_ok = false;
    std::string note;  // failure diagnostics, if any
};

struct ConvergenceReport {
    std::vector<ConvergenceEntry> entries;
};

/// Needs three distinct real diagnostic eigenvalues in every spectrum
/// (family endpoints plus midpoint, or lambda2_override for custom
/// families); throws Error otherwise.
ConvergenceEntry hypothesis_report(const FamilySpec& family, int n);

/// Builds the family operator for each n (stable closed-form evaluation for
/// equidistant / Morigi-Neamtu / classical spectra, the generic construction
/// otherwise), measures the sup-grid error of B_n f - f, and attaches the
/// hypothesis diagnostics where computable. Per-n failures are recorded in
/// the entry note and the study continues.
ConvergenceReport convergence_study(const FamilySpec& family,
                                    const std::function<double(double)>& f,
                                    const std::vector<int>& n_list, int grid);

/// Named test functions: abs_mid, square, sin, runge, exp, exp:<lambda>.
std::function<double(double)> test_function(const std::string& name, double a,
                                            double b);

}  // namespace expbern
