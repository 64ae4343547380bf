#include "expbern/eigenvalues.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace expbern {

namespace {

bool lex_less(cplx u, cplx v) {
    if (u.real() != v.real()) return u.real() < v.real();
    return u.imag() < v.imag();
}

}  // namespace

EigenvalueMultiset::EigenvalueMultiset(std::vector<Entry> entries, double eps)
    : entries_(std::move(entries)), eps_(eps) {
    if (eps < 0) throw std::invalid_argument("eigenvalue merge eps must be >= 0");
    if (entries_.empty())
        throw std::invalid_argument("eigenvalue multiset must be nonempty");
    for (const auto& e : entries_) {
        if (e.multiplicity < 1)
            throw std::invalid_argument("eigenvalue multiplicities must be >= 1");
    }
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& x, const Entry& y) { return lex_less(x.value, y.value); });
    for (std::size_t i = 0; i + 1 < entries_.size(); ++i) {
        if (std::abs(entries_[i].value - entries_[i + 1].value) <= eps_)
            throw std::invalid_argument(
                "eigenvalue representatives closer than eps; canonicalize first");
    }
}

EigenvalueMultiset EigenvalueMultiset::canonicalize(const std::vector<cplx>& values,
                                                    double eps) {
    if (values.empty())
        throw std::invalid_argument("eigenvalue list must be nonempty");
    if (eps < 0) throw std::invalid_argument("eigenvalue merge eps must be >= 0");

    // Transitive-closure clustering via union-find over raw values.
    std::vector<std::size_t> parent(values.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    auto unite = [&](std::size_t i, std::size_t j) { parent[find(i)] = find(j); };
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            if (std::abs(values[i] - values[j]) <= eps) unite(i, j);

    bool chain = false;
    std::vector<Entry> entries;
    std::vector<cplx> reps;
    for (std::size_t r = 0; r < values.size(); ++r) {
        if (find(r) != r) continue;
        cplx centroid = 0.0;
        int count = 0;
        double diameter = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (find(i) != r) continue;
            centroid += values[i];
            ++count;
            for (std::size_t j = 0; j < values.size(); ++j)
                if (find(j) == r)
                    diameter = std::max(diameter, std::abs(values[i] - values[j]));
        }
        centroid /= static_cast<double>(count);
        if (diameter > eps) chain = true;  // ambiguous chain, merged anyway
        entries.push_back({centroid, count});
        reps.push_back(centroid);
    }

    // Centroids of long chains may themselves collide; re-cluster until
    // representatives are properly separated.
    bool separated = true;
    for (std::size_t i = 0; i < reps.size() && separated; ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j)
            if (std::abs(reps[i] - reps[j]) <= eps) { separated = false; break; }
    if (!separated) {
        std::vector<cplx> expanded;
        for (const auto& e : entries)
            for (int m = 0; m < e.multiplicity; ++m) expanded.push_back(e.value);
        EigenvalueMultiset again = canonicalize(expanded, eps);
        again.chain_warning_ = true;
        return again;
    }

    EigenvalueMultiset out(std::move(entries), eps);
    out.chain_warning_ = chain;
    return out;
}

int EigenvalueMultiset::dimension() const {
    int d = 0;
    for (const auto& e : entries_) d += e.multiplicity;
    return d;
}

double EigenvalueMultiset::max_imag() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, std::abs(e.value.imag()));
    return m;
}

bool EigenvalueMultiset::all_real() const { return max_imag() <= eps_; }

bool EigenvalueMultiset::is_conjugate_closed(double eps) const {
    for (const auto& e : entries_) {
        bool found = false;
        for (const auto& f : entries_) {
            if (std::abs(f.value - std::conj(e.value)) <= eps &&
                f.multiplicity == e.multiplicity) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

bool EigenvalueMultiset::equivalent(const EigenvalueMultiset& other,
                                    double eps) const {
    if (entries_.size() != other.entries_.size()) return false;
    for (const auto& e : entries_) {
        bool found = false;
        for (const auto& f : other.entries_) {
            if (std::abs(f.value - e.value) <= eps &&
                f.multiplicity == e.multiplicity) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

int EigenvalueMultiset::multiplicity_of(cplx value) const {
    for (const auto& e : entries_)
        if (std::abs(e.value - value) <= eps_) return e.multiplicity;
    return 0;
}

EigenvalueMultiset EigenvalueMultiset::without(cplx value) const {
    std::vector<Entry> out;
    bool removed = false;
    for (const auto& e : entries_) {
        if (!removed && std::abs(e.value - value) <= eps_) {
            removed = true;
            if (e.multiplicity > 1) out.push_back({e.value, e.multiplicity - 1});
        } else {
            out.push_back(e);
        }
    }
    if (!removed)
        throw std::invalid_argument("without(): eigenvalue " + format_complex(value) +
                                    " not present in " + to_string());
    if (out.empty())
        throw std::invalid_argument("without(): removal would empty the multiset");
    return EigenvalueMultiset(std::move(out), eps_);
}

EigenvalueMultiset EigenvalueMultiset::shifted(cplx c) const {
    std::vector<Entry> out = entries_;
    for (auto& e : out) e.value += c;
    return EigenvalueMultiset(std::move(out), eps_);
}

EigenvalueMultiset EigenvalueMultiset::scaled(double c) const {
    if (c == 0.0) throw std::invalid_argument("scaled(): factor must be nonzero");
    std::vector<Entry> out = entries_;
    for (auto& e : out) e.value *= c;
    return EigenvalueMultiset(std::move(out), eps_);
}

std::vector<cplx> EigenvalueMultiset::expanded() const {
    std::vector<cplx> out;
    for (const auto& e : entries_)
        for (int m = 0; m < e.multiplicity; ++m) out.push_back(e.value);
    return out;
}

std::vector<double> EigenvalueMultiset::real_values() const {
    std::vector<double> out;
    for (const auto& e : entries_)
        if (std::abs(e.value.imag()) <= eps_) out.push_back(e.value.real());
    std::sort(out.begin(), out.end());
    return out;
}

std::string EigenvalueMultiset::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) s += ", ";
        s += format_complex(entries_[i].value) + ":" +
             std::to_string(entries_[i].multiplicity);
    }
    return s + "}";
}

}  // namespace expbern
