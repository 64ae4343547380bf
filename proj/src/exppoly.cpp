#include "expbern/exppoly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace expbern {

namespace {

bool lex_less(cplx u, cplx v) {
    if (u.real() != v.real()) return u.real() < v.real();
    return u.imag() < v.imag();
}

}  // namespace

ExpPoly ExpPoly::constant(cplx c) { return term(0.0, {c}); }

ExpPoly ExpPoly::exponential(cplx mu) { return term(mu, {1.0}); }

ExpPoly ExpPoly::monomial(int s) {
    std::vector<cplx> coeff(s + 1, 0.0);
    coeff[s] = 1.0;
    return term(0.0, std::move(coeff));
}

ExpPoly ExpPoly::term(cplx mu, std::vector<cplx> coeff) {
    ExpPoly f;
    f.add_term(mu, coeff);
    return f;
}

int ExpPoly::degree_at(cplx mu, double eps) const {
    for (const auto& t : terms_)
        if (std::abs(t.mu - mu) <= eps) return static_cast<int>(t.coeff.size()) - 1;
    return -1;
}

int ExpPoly::max_degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max<int>(d, t.coeff.size() - 1);
    return d;
}

double ExpPoly::max_coeff() const {
    double m = 0.0;
    for (const auto& t : terms_)
        for (cplx c : t.coeff) m = std::max(m, std::abs(c));
    return m;
}

bool ExpPoly::in_space(const EigenvalueMultiset& lambda) const {
    for (const auto& t : terms_) {
        int mult = lambda.multiplicity_of(t.mu);
        if (static_cast<int>(t.coeff.size()) > mult) return false;
    }
    return true;
}

cplx ExpPoly::eval(double x) const {
    cplx total = 0.0;
    for (const auto& t : terms_) {
        cplx p = 0.0;
        for (auto it = t.coeff.rbegin(); it != t.coeff.rend(); ++it) p = p * x + *it;
        total += p * std::exp(t.mu * x);
    }
    if (!std::isfinite(total.real()) || !std::isfinite(total.imag()))
        throw Error("eval: non-finite result at x = " + format_double(x));
    return total;
}

ExpPoly ExpPoly::derivative(int order) const {
    if (order < 0) throw std::invalid_argument("derivative order must be >= 0");
    ExpPoly f = *this;
    for (int r = 0; r < order; ++r) {
        ExpPoly g;
        for (const auto& t : f.terms_) {
            // d/dx x^s e^{mu x} = s x^{s-1} e^{mu x} + mu x^s e^{mu x}
            std::vector<cplx> coeff(t.coeff.size(), 0.0);
            for (std::size_t s = 0; s < t.coeff.size(); ++s) {
                if (s + 1 < t.coeff.size())
                    coeff[s] += static_cast<double>(s + 1) * t.coeff[s + 1];
                coeff[s] += t.mu * t.coeff[s];
            }
            g.add_term(t.mu, coeff);
        }
        f = std::move(g);
    }
    return f;
}

ExpPoly ExpPoly::apply_first_order(cplx lambda) const {
    ExpPoly g = derivative(1);
    g.add_scaled(*this, -lambda);
    return g;
}

ExpPoly ExpPoly::modulate(cplx c, double a) const {
    ExpPoly g;
    cplx scale = std::exp(-c * a);
    for (const auto& t : terms_) {
        std::vector<cplx> coeff = t.coeff;
        for (auto& v : coeff) v *= scale;
        g.add_term(t.mu + c, coeff);
    }
    return g;
}

ExpPoly ExpPoly::reparametrize(double c, double gamma) const {
    if (c == 0.0) throw std::invalid_argument("reparametrize: c must be nonzero");
    ExpPoly g;
    for (const auto& t : terms_) {
        // c_s (c x + gamma)^s e^{mu gamma} e^{(c mu) x}
        std::vector<cplx> coeff(t.coeff.size(), 0.0);
        for (std::size_t s = 0; s < t.coeff.size(); ++s) {
            for (std::size_t q = 0; q <= s; ++q)
                coeff[q] += t.coeff[s] * binomial(s, q) * std::pow(c, double(q)) *
                            std::pow(gamma, double(s - q));
        }
        cplx scale = std::exp(t.mu * gamma);
        for (auto& v : coeff) v *= scale;
        g.add_term(t.mu * c, coeff);
    }
    return g;
}

std::vector<cplx> ExpPoly::taylor_derivatives(double x0, int m) const {
    std::vector<cplx> out;
    out.reserve(m + 1);
    ExpPoly g = *this;
    for (int i = 0; i <= m; ++i) {
        out.push_back(g.eval(x0));
        if (i < m) g = g.derivative(1);
    }
    return out;
}

ExpPoly::ZeroOrder ExpPoly::zero_order_at(double x0, int max_order,
                                          double tol) const {
    if (tol <= 0) throw std::invalid_argument("zero_order_at: tol must be > 0");
    if (is_zero()) throw std::invalid_argument("zero_order_at: f is zero");
    double scale =
        max_coeff() * std::pow(std::max(1.0, std::abs(x0)), double(max_degree()));
    std::vector<cplx> tay = taylor_derivatives(x0, max_order);
    for (int k = 0; k <= max_order; ++k)
        if (std::abs(tay[k]) > tol * scale) return {k, tay[k]};
    throw Error("zero_order_at: order undetermined up to " +
                std::to_string(max_order) + " at x0 = " + format_double(x0));
}

bool ExpPoly::is_real_valued(double tol) const {
    double scale = std::max(max_coeff(), 1e-300);
    for (const auto& t : terms_) {
        const Term* partner = nullptr;
        for (const auto& u : terms_) {
            if (std::abs(u.mu - std::conj(t.mu)) <= tol::merge_eps) {
                partner = &u;
                break;
            }
        }
        if (!partner || partner->coeff.size() != t.coeff.size()) return false;
        for (std::size_t s = 0; s < t.coeff.size(); ++s)
            if (std::abs(std::conj(t.coeff[s]) - partner->coeff[s]) > tol * scale)
                return false;
    }
    return true;
}

ExpPoly& ExpPoly::add_scaled(const ExpPoly& g, cplx scale) {
    for (const auto& t : g.terms_) add_term(t.mu, t.coeff, scale);
    return *this;
}

ExpPoly& ExpPoly::add_term(cplx mu, const std::vector<cplx>& coeff, cplx scale) {
    for (auto& t : terms_) {
        if (std::abs(t.mu - mu) <= tol::merge_eps) {
            if (t.coeff.size() < coeff.size()) t.coeff.resize(coeff.size(), 0.0);
            for (std::size_t s = 0; s < coeff.size(); ++s)
                t.coeff[s] += scale * coeff[s];
            trim();
            return *this;
        }
    }
    Term t{mu, coeff};
    for (auto& v : t.coeff) v *= scale;
    terms_.push_back(std::move(t));
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return lex_less(x.mu, y.mu); });
    trim();
    return *this;
}

void ExpPoly::trim() {
    double threshold = tol::trim_rel * max_coeff();
    for (auto& t : terms_) {
        while (!t.coeff.empty() && std::abs(t.coeff.back()) <= threshold)
            t.coeff.pop_back();
    }
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const Term& t) { return t.coeff.empty(); }),
                 terms_.end());
}

ExpPoly operator+(const ExpPoly& f, const ExpPoly& g) {
    ExpPoly h = f;
    h.add_scaled(g, 1.0);
    return h;
}

ExpPoly operator-(const ExpPoly& f, const ExpPoly& g) {
    ExpPoly h = f;
    h.add_scaled(g, -1.0);
    return h;
}

ExpPoly operator*(cplx c, const ExpPoly& f) {
    ExpPoly h;
    h.add_scaled(f, c);
    return h;
}

std::string ExpPoly::to_string() const {
    if (terms_.empty()) return "(0,0) * x^0 * exp((0,0)*x)";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        for (std::size_t s = 0; s < t.coeff.size(); ++s) {
            if (t.coeff[s] == cplx(0.0) && t.coeff.size() > 1) continue;
            if (!first) out += " + ";
            first = false;
            out += format_complex(t.coeff[s]) + " * x^" + std::to_string(s) +
                   " * exp(" + format_complex(t.mu) + "*x)";
        }
    }
    return out;
}

namespace {

cplx parse_pair(const std::string& s, std::size_t& pos) {
    auto fail = [&] {
        throw std::invalid_argument("ExpPoly::parse: bad complex literal in '" + s +
                                    "' at position " + std::to_string(pos));
    };
    if (pos >= s.size() || s[pos] != '(') fail();
    std::size_t comma = s.find(',', pos);
    std::size_t close = s.find(')', pos);
    if (comma == std::string::npos || close == std::string::npos || comma > close)
        fail();
    double re = std::stod(s.substr(pos + 1, comma - pos - 1));
    double im = std::stod(s.substr(comma + 1, close - comma - 1));
    pos = close + 1;
    return {re, im};
}

void expect(const std::string& s, std::size_t& pos, const std::string& lit) {
    if (s.compare(pos, lit.size(), lit) != 0)
        throw std::invalid_argument("ExpPoly::parse: expected '" + lit + "' in '" +
                                    s + "' at position " + std::to_string(pos));
    pos += lit.size();
}

}  // namespace

ExpPoly ExpPoly::parse(const std::string& text) {
    ExpPoly f;
    std::size_t pos = 0;
    while (pos < text.size()) {
        cplx c = parse_pair(text, pos);
        expect(text, pos, " * x^");
        std::size_t used = 0;
        int s = std::stoi(text.substr(pos), &used);
        pos += used;
        expect(text, pos, " * exp(");
        cplx mu = parse_pair(text, pos);  // the inner (re,im) pair
        expect(text, pos, "*x)");
        std::vector<cplx> coeff(s + 1, 0.0);
        coeff[s] = c;
        f.add_term(mu, coeff);
        if (pos < text.size()) expect(text, pos, " + ");
    }
    return f;
}

}  // namespace expbern
