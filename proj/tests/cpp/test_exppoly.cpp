#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "expbern/exppoly.hpp"
#include "oracles.hpp"

using namespace expbern;
using doctest::Approx;

namespace {

const cplx I{0.0, 1.0};

ExpPoly one_minus_cos() {
    ExpPoly f = ExpPoly::constant(1.0);
    f.add_term(I, {-0.5});
    f.add_term(-I, {-0.5});
    return f;
}

ExpPoly random_exppoly(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::uniform_int_distribution<int> terms(1, 3), deg(0, 2);
    ExpPoly f;
    for (int t = 0, nt = terms(rng); t < nt; ++t) {
        std::vector<cplx> coeff(deg(rng) + 1);
        for (auto& c : coeff) c = cplx(u(rng), u(rng));
        f.add_term(cplx(u(rng), u(rng)), coeff);
    }
    return f;
}

}  // namespace

TEST_CASE("canonicalize clusters duplicates") {
    auto lam = EigenvalueMultiset::canonicalize({0.0, 0.0, 1.0}, 1e-9);
    REQUIRE(lam.entries().size() == 2);
    CHECK(lam.multiplicity_of(0.0) == 2);
    CHECK(lam.multiplicity_of(1.0) == 1);
    CHECK(lam.dimension() == 3);
    CHECK_FALSE(lam.chain_warning());
}

TEST_CASE("canonicalize keeps distinct values") {
    auto lam = EigenvalueMultiset::canonicalize({I, -I, 0.0}, 1e-9);
    CHECK(lam.entries().size() == 3);
    CHECK(lam.degree() == 2);
}

TEST_CASE("canonicalize merges near-duplicates at the centroid") {
    auto lam = EigenvalueMultiset::canonicalize({1.0, 1.0 + 1e-12}, 1e-9);
    REQUIRE(lam.entries().size() == 1);
    CHECK(lam.entries()[0].multiplicity == 2);
    CHECK(std::abs(lam.entries()[0].value - cplx(1.0 + 5e-13)) < 1e-15);
}

TEST_CASE("canonicalize flags ambiguous chains") {
    auto lam = EigenvalueMultiset::canonicalize({0.0, 0.8e-9, 1.6e-9}, 1e-9);
    CHECK(lam.entries().size() == 1);
    CHECK(lam.entries()[0].multiplicity == 3);
    CHECK(lam.chain_warning());
}

TEST_CASE("conjugate closure") {
    CHECK(EigenvalueMultiset::canonicalize({0.0, I, -I}).is_conjugate_closed());
    CHECK_FALSE(EigenvalueMultiset::canonicalize({0.0, I}).is_conjugate_closed());
    EigenvalueMultiset mismatch({{cplx(1, 1), 2}, {cplx(1, -1), 1}});
    CHECK_FALSE(mismatch.is_conjugate_closed(1e-9));
}

TEST_CASE("equivalence is permutation-invariant") {
    auto a = EigenvalueMultiset::canonicalize({0.0, 1.0});
    auto b = EigenvalueMultiset::canonicalize({1.0, 0.0});
    CHECK(a.equivalent(b, 1e-9));
    auto c = EigenvalueMultiset::canonicalize({0.0, 0.0});
    CHECK_FALSE(c.equivalent(a, 1e-9));
    CHECK(EigenvalueMultiset::canonicalize({I, -I})
              .equivalent(EigenvalueMultiset::canonicalize({-I, I}), 1e-9));
}

TEST_CASE("max_imag and without") {
    auto lam = EigenvalueMultiset::canonicalize({0.0, cplx(0.5, 2.0), cplx(0.5, -2.0)});
    CHECK(lam.max_imag() == Approx(2.0));
    auto red = lam.without(cplx(0.5, 2.0));
    CHECK(red.dimension() == 2);
    CHECK_THROWS_AS(lam.without(cplx(9.0, 0.0)), std::invalid_argument);
}

TEST_CASE("eval matches closed forms") {
    CHECK(one_minus_cos().eval(M_PI).real() == Approx(2.0).epsilon(1e-14));
    CHECK(ExpPoly::exponential(1.0).eval(0.0).real() == Approx(1.0));
    // Phi_(0,1,2)(1) against the partial-fraction oracle.
    ExpPoly phi;  // 1/2 - e^x + e^{2x}/2
    phi.add_term(0.0, {0.5});
    phi.add_term(1.0, {-1.0});
    phi.add_term(2.0, {0.5});
    cplx want = oracles::partial_fraction_phi({0.0, 1.0, 2.0}, 1.0);
    CHECK(std::abs(phi.eval(1.0) - want) < 1e-13);
    CHECK(phi.eval(1.0).real() == Approx(1.47624622100628).epsilon(1e-12));
}

TEST_CASE("eval signals overflow as an error") {
    CHECK_THROWS_AS(ExpPoly::exponential(1000.0).eval(1000.0), Error);
}

TEST_CASE("derivative term rule") {
    ExpPoly sin_x = cplx(0.0, -0.5) * ExpPoly::exponential(I) +
                    cplx(0.0, 0.5) * ExpPoly::exponential(-I);
    ExpPoly d = one_minus_cos().derivative(1);
    for (double x : oracles::grid(-2.0, 2.0, 21))
        CHECK(std::abs(d.eval(x) - sin_x.eval(x)) < 1e-14);

    ExpPoly xe2x = ExpPoly::term(2.0, {0.0, 1.0});
    ExpPoly dd = xe2x.derivative(1);  // (1+2x)e^{2x}
    for (double x : oracles::grid(-1.0, 1.0, 11))
        CHECK(dd.eval(x).real() ==
              Approx((1.0 + 2.0 * x) * std::exp(2.0 * x)).epsilon(1e-13));

    CHECK(one_minus_cos().derivative(2).eval(0.0).real() == Approx(1.0));
}

TEST_CASE("derivative of order zero is the identity") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        ExpPoly f = random_exppoly(rng);
        ExpPoly g = f.derivative(0);
        for (double x : oracles::grid(-1.0, 1.0, 7))
            CHECK(std::abs(f.eval(x) - g.eval(x)) == 0.0);
    }
}

TEST_CASE("finite differences confirm the derivative") {
    std::mt19937_64 rng(11);
    const double h = 1e-5;
    for (int trial = 0; trial < 10; ++trial) {
        ExpPoly f = random_exppoly(rng);
        ExpPoly df = f.derivative(1);
        double scale = std::max(1.0, f.max_coeff());
        for (double x : oracles::grid(-0.8, 0.8, 5)) {
            cplx fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
            CHECK(std::abs(fd - df.eval(x)) < 200.0 * scale * h * h);
        }
    }
}

TEST_CASE("apply_first_order annihilates its eigenvalue") {
    ExpPoly e = ExpPoly::exponential(cplx(0.7, 0.2));
    CHECK(e.apply_first_order(cplx(0.7, 0.2)).is_zero());

    ExpPoly xe = ExpPoly::term(cplx(0.3, 0.0), {0.0, 1.0});
    ExpPoly r = xe.apply_first_order(0.3);
    CHECK(r.degree_at(0.3) == 0);  // degree dropped by one
    for (double x : oracles::grid(-1.0, 1.0, 9))
        CHECK(r.eval(x).real() == Approx(std::exp(0.3 * x)).epsilon(1e-13));

    ExpPoly s = one_minus_cos().apply_first_order(0.0);
    for (double x : oracles::grid(-2.0, 2.0, 9))
        CHECK(s.eval(x).real() == Approx(std::sin(x)).epsilon(1e-12));
}

TEST_CASE("modulate") {
    ExpPoly f = ExpPoly::constant(1.0).modulate(1.0, 0.0);
    for (double x : oracles::grid(-1.0, 1.0, 9))
        CHECK(f.eval(x).real() == Approx(std::exp(x)));

    ExpPoly g = ExpPoly::monomial(1).modulate(2.0, 0.0);
    CHECK(g.degree_at(2.0) == 1);

    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        ExpPoly h = random_exppoly(rng);
        cplx c(0.4, -0.3);
        double a = 0.25, x = 0.7;
        cplx want = h.eval(x) * std::exp(c * (x - a));
        CHECK(std::abs(h.modulate(c, a).eval(x) - want) < 1e-12 * (1 + std::abs(want)));

        // modulate by -c undoes modulate by c, coefficient-wise
        ExpPoly back = h.modulate(c, a).modulate(-c, a);
        REQUIRE(back.terms().size() == h.terms().size());
        for (std::size_t t = 0; t < h.terms().size(); ++t) {
            REQUIRE(back.terms()[t].coeff.size() == h.terms()[t].coeff.size());
            for (std::size_t s = 0; s < h.terms()[t].coeff.size(); ++s)
                CHECK(std::abs(back.terms()[t].coeff[s] - h.terms()[t].coeff[s]) <=
                      1e-12 * h.max_coeff());
        }
    }
}

TEST_CASE("reparametrize") {
    ExpPoly f = ExpPoly::exponential(1.0).reparametrize(2.0, 0.0);
    CHECK(f.degree_at(2.0) == 0);

    ExpPoly g = ExpPoly::monomial(1).reparametrize(1.0, 3.0);  // x + 3
    CHECK(g.eval(0.0).real() == Approx(3.0));
    CHECK(g.eval(2.0).real() == Approx(5.0));

    CHECK_THROWS_AS(g.reparametrize(0.0, 0.0), std::invalid_argument);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        ExpPoly h = random_exppoly(rng);
        double c = 1.5, gamma = -1.0, x = 0.3;
        cplx want = h.eval(c * x + gamma);
        CHECK(std::abs(h.reparametrize(c, gamma).eval(x) - want) <
              1e-11 * (1 + std::abs(want)));

        ExpPoly back = h.reparametrize(c, gamma).reparametrize(1.0 / c, -gamma / c);
        for (double y : oracles::grid(-0.9, 0.9, 5))
            CHECK(std::abs(back.eval(y) - h.eval(y)) <=
                  1e-10 * std::max(1.0, std::abs(h.eval(y))));
    }
}

TEST_CASE("taylor_derivatives") {
    auto t = one_minus_cos().taylor_derivatives(0.0, 2);
    CHECK(std::abs(t[0]) < 1e-15);
    CHECK(std::abs(t[1]) < 1e-15);
    CHECK(t[2].real() == Approx(1.0));

    auto u = ExpPoly::exponential(1.0).taylor_derivatives(0.0, 3);
    for (const cplx& v : u) CHECK(v.real() == Approx(1.0));

    auto w = ExpPoly::monomial(2).taylor_derivatives(1.0, 2);
    CHECK(w[0].real() == Approx(1.0));
    CHECK(w[1].real() == Approx(2.0));
    CHECK(w[2].real() == Approx(2.0));
}

TEST_CASE("zero_order_at") {
    ExpPoly sin_x = one_minus_cos().derivative(1);
    auto z = sin_x.zero_order_at(0.0, 5, 1e-9);
    CHECK(z.order == 1);
    CHECK(z.leading.real() == Approx(1.0));

    auto z2 = one_minus_cos().zero_order_at(0.0, 5, 1e-9);
    CHECK(z2.order == 2);
    CHECK(z2.leading.real() == Approx(1.0));

    // (1 - cos(x-b))/(1 - cos b) at b
    double b = 2.0;
    ExpPoly p0 = cplx(1.0 / (1.0 - std::cos(b))) *
                 one_minus_cos().reparametrize(1.0, -b);
    auto z3 = p0.zero_order_at(b, 5, 1e-9);
    CHECK(z3.order == 2);
    CHECK(z3.leading.real() == Approx(1.0 / (1.0 - std::cos(b))).epsilon(1e-10));

    CHECK_THROWS_AS(one_minus_cos().zero_order_at(0.0, 1, 1e-9), Error);
}

TEST_CASE("is_real_valued") {
    CHECK(one_minus_cos().is_real_valued(1e-12));
    CHECK_FALSE(ExpPoly::exponential(I).is_real_valued(1e-12));
    ExpPoly f = ExpPoly::term(cplx(0.5, 1.0), {cplx(1.0, 2.0)});
    f.add_term(cplx(0.5, -1.0), {cplx(1.0, -2.0)});
    CHECK(f.is_real_valued(1e-12));
}

TEST_CASE("trim keeps representations minimal") {
    ExpPoly f = ExpPoly::exponential(0.7);
    f.add_term(0.7, {-1.0});  // cancels to zero
    CHECK(f.is_zero());
    ExpPoly g = ExpPoly::term(0.0, {1.0, 1e-20});
    CHECK(g.degree_at(0.0) == 0);
}

TEST_CASE("textual form round-trips") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        ExpPoly f = random_exppoly(rng);
        ExpPoly g = ExpPoly::parse(f.to_string());
        REQUIRE(g.terms().size() == f.terms().size());
        for (std::size_t t = 0; t < f.terms().size(); ++t) {
            CHECK(g.terms()[t].mu == f.terms()[t].mu);  // exact at 17 digits
            REQUIRE(g.terms()[t].coeff.size() == f.terms()[t].coeff.size());
            for (std::size_t s = 0; s < f.terms()[t].coeff.size(); ++s)
                CHECK(g.terms()[t].coeff[s] == f.terms()[t].coeff[s]);
        }
    }
    CHECK(ExpPoly::parse(ExpPoly().to_string()).is_zero());
}

TEST_CASE("membership in a space") {
    auto lam = EigenvalueMultiset::canonicalize({0.0, 0.0, 1.0});
    CHECK(ExpPoly::term(0.0, {1.0, 2.0}).in_space(lam));
    CHECK_FALSE(ExpPoly::term(0.0, {1.0, 2.0, 3.0}).in_space(lam));
    CHECK_FALSE(ExpPoly::exponential(5.0).in_space(lam));
}
