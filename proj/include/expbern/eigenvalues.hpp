#pragma once

#include <vector>

#include "expbern/types.hpp"

namespace expbern {

/// Canonical multiset of complex eigenvalues with multiplicities. The
/// multiset defines the exponential-polynomial space; the order of entries
/// never matters, so they are kept sorted by (re, im).
class EigenvalueMultiset {
public:
    struct Entry {
        cplx value;
        int multiplicity;
    };

    EigenvalueMultiset(std::vector<Entry> entries, double eps = tol::merge_eps);

    /// Clusters values whose pairwise distance is <= eps (by transitive
    /// closure) into a single representative at the cluster centroid with
    /// summed multiplicity. Clusters of diameter > eps set chain_warning().
    static EigenvalueMultiset canonicalize(const std::vector<cplx>& values,
                                           double eps = tol::merge_eps);

    const std::vector<Entry>& entries() const { return entries_; }
    double eps() const { return eps_; }
    bool chain_warning() const { return chain_warning_; }

    int dimension() const;  // total multiplicity, n+1
    int degree() const { return dimension() - 1; }

    /// max |Im lambda_j| over the spectrum.
    double max_imag() const;
    bool all_real() const;

    /// True iff for every entry (mu, m) there is an entry (conj(mu), m).
    bool is_conjugate_closed(double eps) const;
    bool is_conjugate_closed() const { return is_conjugate_closed(eps_); }

    /// Multisets agree up to eps-matching of representatives with equal
    /// multiplicities.
    bool equivalent(const EigenvalueMultiset& other, double eps) const;

    bool contains(cplx value) const { return multiplicity_of(value) > 0; }
    int multiplicity_of(cplx value) const;

    /// Removes one multiplicity of the matching eigenvalue; throws
    /// std::invalid_argument if no entry matches within eps.
    EigenvalueMultiset without(cplx value) const;

    EigenvalueMultiset shifted(cplx c) const;
    EigenvalueMultiset scaled(double c) const;

    /// Eigenvalues with repeats, sorted by (re, im).
    std::vector<cplx> expanded() const;

    /// Distinct real eigenvalues (|Im| <= eps), ascending.
    std::vector<double> real_values() const;

    std::string to_string() const;

private:
    std::vector<Entry> entries_;
    double eps_ = tol::merge_eps;
    bool chain_warning_ = false;
};

}  // namespace expbern
