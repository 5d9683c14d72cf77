#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wigner/catalan.hpp"
#include "wigner/limit_operator.hpp"
#include "wigner/linalg.hpp"

using namespace wigner;

namespace {

GramContext make_ctx(int max_level = 6) {
    std::vector<IntervalQ> intervals = {IntervalQ::of(0, 1, 1, 1), IntervalQ::of(0, 1, 1, 2),
                                        IntervalQ::of(1, 2, 1, 1), IntervalQ::of(1, 4, 3, 4)};
    return GramContext(intervals, max_level);
}

}  // namespace

TEST_CASE("Gram entries: overlaps, orthogonality, field pairings") {
    GramContext ctx = make_ctx();

    // <1_{(0,1/2]}, 1_{(1/4,3/4]}> = 1/4
    CHECK(ctx.entry(BasisElement::indicator(1), BasisElement::indicator(3)) == Rational(1, 4));
    // indicators are orthogonal to every field slice
    CHECK(ctx.entry(BasisElement::indicator(0), BasisElement::psi(1, 0)) == Rational(0));
    CHECK(ctx.entry(BasisElement::indicator(2), BasisElement::psi(4, 1)) == Rational(0));
    // <psi_{3,(0,1]}, psi_{3,(0,1]}> = 2^2 + 1 = 5
    CHECK(ctx.entry(BasisElement::psi(3, 0), BasisElement::psi(3, 0)) == Rational(5));
    // opposite parity vanishes
    CHECK(ctx.entry(BasisElement::psi(1, 0), BasisElement::psi(2, 0)) == Rational(0));
    // same parity, overlapping intervals: a(3,1) a(1,1) |(0,1] cap (0,1/2]|
    CHECK(ctx.entry(BasisElement::psi(3, 0), BasisElement::psi(1, 1)) == Rational(1));

    SymbolicVector u = SymbolicVector::basis(BasisElement::indicator(1));
    SymbolicVector v = SymbolicVector::basis(BasisElement::indicator(3));
    CHECK(gram(u, v, ctx) == Rational(1, 4));
    CHECK(gram(u, v, ctx) == gram(v, u, ctx));

    // unregistered elements are refused
    CHECK_THROWS(ctx.entry(BasisElement::indicator(7), BasisElement::indicator(0)));
    CHECK_THROWS(ctx.entry(BasisElement::psi(9, 0), BasisElement::psi(1, 0)));
}

TEST_CASE("operator action on the generators") {
    GramContext ctx = make_ctx();

    SymbolicVector w_ind = apply_w(SymbolicVector::basis(BasisElement::indicator(2)), ctx);
    REQUIRE(w_ind.coefficients().size() == 1);
    CHECK(w_ind.coefficients().begin()->first == BasisElement::psi(1, 2));
    CHECK(w_ind.coefficients().begin()->second == Rational(1));

    // W(psi_{1,P}) = beta_2 1_P + psi_{2,P} - beta_1 psi_{1,P} = 1_P + psi_{2,P}
    SymbolicVector w_psi1 = apply_w(SymbolicVector::basis(BasisElement::psi(1, 0)), ctx);
    CHECK(w_psi1.coefficients().size() == 2);
    CHECK(w_psi1.coefficients().at(BasisElement::indicator(0)) == Rational(1));
    CHECK(w_psi1.coefficients().at(BasisElement::psi(2, 0)) == Rational(1));

    // W(psi_{2,P}) = 0 1_P + psi_{3,P} - beta_2 psi_{1,P}
    SymbolicVector w_psi2 = apply_w(SymbolicVector::basis(BasisElement::psi(2, 0)), ctx);
    CHECK(w_psi2.coefficients().size() == 2);
    CHECK(w_psi2.coefficients().at(BasisElement::psi(3, 0)) == Rational(1));
    CHECK(w_psi2.coefficients().at(BasisElement::psi(1, 0)) == Rational(-1));

    SymbolicVector zero;
    CHECK(apply_w(zero, ctx).zero());

    // the truncation boundary refuses rather than projecting
    CHECK_THROWS(apply_w(SymbolicVector::basis(BasisElement::psi(6, 0)), ctx));
}

TEST_CASE("power identity: W^l(1_P) = beta_l 1_P + psi_{l,P}, exactly") {
    GramContext ctx = make_ctx();
    for (int p = 0; p < 4; ++p)
        for (int l = 1; l <= 6; ++l) {
            CAPTURE(p);
            CAPTURE(l);
            CHECK(power_identity_residual(p, l, ctx).zero());
        }
    CHECK_THROWS(power_identity_residual(0, 7, ctx));
}

TEST_CASE("spectral moments are the semicircle moments scaled by interval length") {
    GramContext ctx = make_ctx();

    SymbolicVector unit = SymbolicVector::basis(BasisElement::indicator(0));
    std::vector<Rational> ms = spectral_moments(unit, 6, ctx);
    CHECK(ms[0] == Rational(0));
    CHECK(ms[1] == Rational(1));
    CHECK(ms[2] == Rational(0));
    CHECK(ms[3] == Rational(2));
    CHECK(ms[4] == Rational(0));
    CHECK(ms[5] == Rational(5));

    SymbolicVector half = SymbolicVector::basis(BasisElement::indicator(1));
    std::vector<Rational> hs = spectral_moments(half, 6, ctx);
    for (int l = 1; l <= 6; ++l)
        CHECK(hs[static_cast<std::size_t>(l - 1)] == Rational(beta_moment(l)) * Rational(1, 2));

    // additivity through registered subintervals: 1_{(0,1/2]} + 1_{(1/2,1]}
    SymbolicVector split;
    split.add(BasisElement::indicator(1), Rational(1));
    split.add(BasisElement::indicator(2), Rational(1));
    std::vector<Rational> ss = spectral_moments(split, 6, ctx);
    for (int l = 1; l <= 6; ++l)
        CHECK(ss[static_cast<std::size_t>(l - 1)] == Rational(beta_moment(l)));

    SymbolicVector with_psi = SymbolicVector::basis(BasisElement::psi(1, 0));
    CHECK_THROWS(spectral_moments(with_psi, 2, ctx));
}

TEST_CASE("the action is self-adjoint in the Gram geometry, exactly") {
    GramContext ctx = make_ctx();
    CHECK(self_adjointness_residual(ctx) == 0.0);
}

TEST_CASE("Gram matrices are PSD despite heavy linear dependence") {
    GramContext ctx = make_ctx();
    const auto& basis = ctx.basis();
    Mat g(basis.size(), basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = 0; b < basis.size(); ++b)
            g.at(a, b) = ctx.entry(basis[a], basis[b]).to_double();
    SymEigen eig = sym_eigen(g);
    CHECK(eig.values.front() >= -1e-9);
    // (0,1] = (0,1/2] + (1/2,1] makes the indicator block singular
    CHECK(eig.values.front() <= 1e-9);
}

TEST_CASE("operator norm probe on the truncation") {
    std::vector<IntervalQ> single = {IntervalQ::unit()};

    GramContext ctx2(single, 2);
    double norm2 = operator_norm_symbolic(ctx2);
    CHECK(norm2 > 0.0);
    CHECK(norm2 <= 3.0);
    CHECK(norm2 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

    CHECK(operator_norm_symbolic(ctx2, 2.0) == doctest::Approx(2.0 * norm2).epsilon(1e-9));

    double prev = norm2;
    for (int level = 3; level <= 7; ++level) {
        GramContext ctx(single, level);
        double cur = operator_norm_symbolic(ctx);
        CHECK(cur >= prev - 1e-12);  // nested truncations
        prev = cur;
    }
    CHECK(prev <= 3.0);

    GramContext ctx1(single, 1);
    CHECK_THROWS(operator_norm_symbolic(ctx1));
}
