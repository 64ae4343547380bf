#pragma once

#include <functional>
#include <string>
#include <vector>

#include "expbern/eigenvalues.hpp"
#include "expbern/types.hpp"

namespace expbern {

/// Exact-symbolic exponential polynomial sum_j P_j(x) e^{mu_j x} with
/// complex polynomial coefficients. All derivatives and 0/0 limits in this
/// library are taken through this representation; nothing is ever
/// differentiated by sampling.
///
/// Invariants: eigenvalues are pairwise separated by more than the merge
/// tolerance, no coefficient sequence is empty or ends in a coefficient
/// below the trim threshold (relative to the largest coefficient).
class ExpPoly {
public:
    struct Term {
        cplx mu;                  // eigenvalue
        std::vector<cplx> coeff;  // coeff[s] multiplies x^s e^{mu x}
    };

    ExpPoly() = default;  // the zero function

    static ExpPoly constant(cplx c);
    static ExpPoly exponential(cplx mu);              // e^{mu x}
    static ExpPoly monomial(int s);                   // x^s
    static ExpPoly term(cplx mu, std::vector<cplx> coeff);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Polynomial degree carried by eigenvalue mu, or -1 if absent.
    int degree_at(cplx mu, double eps = tol::merge_eps) const;
    int max_degree() const;
    double max_coeff() const;

    /// Membership in E_Lambda: each eigenvalue's degree < its multiplicity.
    bool in_space(const EigenvalueMultiset& lambda) const;

    /// Throws Error if the result is non-finite (exponential overflow).
    cplx eval(double x) const;

    ExpPoly derivative(int order = 1) const;

    /// (d/dx - lambda) f. Annihilates one multiplicity of lambda.
    ExpPoly apply_first_order(cplx lambda) const;

    /// f(x) e^{c(x-a)}: shifts every eigenvalue by c.
    ExpPoly modulate(cplx c, double a) const;

    /// g(x) = f(c x + gamma); c must be nonzero.
    ExpPoly reparametrize(double c, double gamma) const;

    /// (f(x0), f'(x0), ..., f^{(m)}(x0)); length m+1.
    std::vector<cplx> taylor_derivatives(double x0, int m) const;

    struct ZeroOrder {
        int order;
        cplx leading;
    };
    /// Smallest k <= max_order with |f^{(k)}(x0)| > tol * scale, where
    /// scale = max_coeff() * max(1,|x0|)^deg. Throws Error when every
    /// derivative up to max_order stays below the threshold.
    ZeroOrder zero_order_at(double x0, int max_order, double tol) const;

    /// True iff f equals its conjugate-reflected form within tol (for each
    /// term (mu, c) there is (conj mu, conj c)).
    bool is_real_valued(double tol) const;

    ExpPoly& add_scaled(const ExpPoly& g, cplx scale);
    ExpPoly& add_term(cplx mu, const std::vector<cplx>& coeff, cplx scale = 1.0);

    friend ExpPoly operator+(const ExpPoly& f, const ExpPoly& g);
    friend ExpPoly operator-(const ExpPoly& f, const ExpPoly& g);
    friend ExpPoly operator*(cplx c, const ExpPoly& f);

    /// Round-trippable textual form: terms "(re,im) * x^s * exp((re,im)*x)"
    /// joined by " + ", 17 significant digits, sorted by (eigenvalue, s).
    std::string to_string() const;
    static ExpPoly parse(const std::string& text);

private:
    std::vector<Term> terms_;  // sorted by (re mu, im mu)

    void trim();
};

}  // namespace expbern
