#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tckit/poly.hpp"

using namespace tckit;

namespace {

RingContext plain2(std::uint32_t p) { return make_context(p, {"x", "y"}); }

Polynomial P(const RingContext& ctx, const std::string& s) {
    return parse_polynomial(ctx, s);
}

Polynomial random_poly(const RingContext& ctx, std::mt19937& rng) {
    std::uniform_int_distribution<unsigned> nterms(0, 5);
    std::uniform_int_distribution<Exp> expd(0, 6);
    std::uniform_int_distribution<Coeff> coeffd(1, ctx.p - 1);
    std::vector<Term> terms;
    for (unsigned i = 0, n = nterms(rng); i < n; ++i) {
        Monomial m = Monomial::one(ctx.arity());
        for (auto& e : m.e) e = expd(rng);
        terms.push_back({m, coeffd(rng)});
    }
    return Polynomial::make(ctx.arity(), std::move(terms), ctx.p);
}

} // namespace

TEST_CASE("field arithmetic") {
    const std::uint32_t p = 13;
    for (Coeff a = 1; a < p; ++a) CHECK(fmul(a, finv(a, p), p) == 1);
    CHECK(fadd(7, 9, p) == 3);
    CHECK(fsub(3, 9, p) == 7);
    CHECK(fneg(0, p) == 0);
    CHECK_THROWS_AS(finv(0, p), Error);
    CHECK(is_prime(2));
    CHECK(is_prime(101));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91)); // 7 * 13
}

TEST_CASE("multiply in the quotient-free ring") {
    RingContext c2 = plain2(2);
    // char-2 cross term vanishes
    CHECK(multiply(c2, P(c2, "x+y"), P(c2, "x+y")) == P(c2, "x^2+y^2"));
    RingContext c5 = plain2(5);
    CHECK(multiply(c5, P(c5, "x+y"), P(c5, "x-y")) == P(c5, "x^2+4y^2"));
    std::mt19937 rng(101);
    for (int i = 0; i < 20; ++i) {
        Polynomial f = random_poly(c5, rng);
        CHECK(multiply(c5, f, Polynomial::constant(2, 1, 5)) == f);
    }
}

TEST_CASE("ring ops are a commutative algebra") {
    RingContext ctx = make_context(7, {"x", "y", "z"});
    std::mt19937 rng(202);
    for (int i = 0; i < 30; ++i) {
        Polynomial f = random_poly(ctx, rng);
        Polynomial g = random_poly(ctx, rng);
        Polynomial h = random_poly(ctx, rng);
        CHECK(poly_add(f, g, 7) == poly_add(g, f, 7));
        CHECK(poly_mul(f, g, 7) == poly_mul(g, f, 7));
        CHECK(poly_mul(f, poly_mul(g, h, 7), 7) == poly_mul(poly_mul(f, g, 7), h, 7));
        CHECK(poly_mul(f, poly_add(g, h, 7), 7) ==
              poly_add(poly_mul(f, g, 7), poly_mul(f, h, 7), 7));
        CHECK(poly_add(f, poly_neg(f, 7), 7).is_zero());
    }
}

TEST_CASE("frobenius_power_poly") {
    RingContext c2 = plain2(2);
    CHECK(frobenius_power_poly(c2, P(c2, "x+y"), 1) == P(c2, "x^2+y^2"));
    RingContext c3 = plain2(3);
    Polynomial f = P(c3, "x+2y");
    CHECK(frobenius_power_poly(c3, f, 0) == f);
    CHECK(frobenius_power_poly(c3, f, 1) == P(c3, "x^3+2y^3"));
    // against the cube computed by plain multiplication
    CHECK(frobenius_power_poly(c3, f, 1) == multiply(c3, f, multiply(c3, f, f)));
    // additivity of Frobenius
    std::mt19937 rng(303);
    for (int i = 0; i < 20; ++i) {
        Polynomial a = random_poly(c3, rng);
        Polynomial b = random_poly(c3, rng);
        CHECK(frobenius_power_poly(c3, poly_add(a, b, 3), 2) ==
              poly_add(frobenius_power_poly(c3, a, 2), frobenius_power_poly(c3, b, 2), 3));
    }
}

TEST_CASE("degree_check with weights") {
    RingContext std2 = plain2(5);
    DegreeInfo d = degree_check(std2, P(std2, "x^2y"));
    CHECK(d.degree == 3);
    CHECK(d.homogeneous);
    d = degree_check(std2, P(std2, "x^2+y"));
    CHECK(d.degree == 2);
    CHECK_FALSE(d.homogeneous);
    RingContext w = make_context(5, {"x", "y"}, {1, 2});
    d = degree_check(w, P(w, "x^2+y"));
    CHECK(d.degree == 2);
    CHECK(d.homogeneous);
    d = degree_check(w, Polynomial::zero(2));
    CHECK(d.zero);
}

TEST_CASE("term orders") {
    Monomial a{{2, 0, 0}};
    Monomial b{{1, 1, 0}};
    Monomial c{{0, 0, 1}};
    TermOrder grevlex;
    TermOrder lex = TermOrder::parse("lex");
    CHECK(grevlex.compare(a, b) > 0);
    CHECK(grevlex.compare(b, c) > 0); // degree first
    CHECK(lex.compare(a, b) > 0);
    CHECK(lex.compare(c, b) < 0); // no degree comparison under lex
    CHECK(TermOrder::parse(grevlex.text()).kind == TermOrder::Kind::Grevlex);
    CHECK_THROWS_AS(TermOrder::parse("mystery"), Error);
    // grevlex storage comparator agrees with the default order
    CHECK(grevlex_cmp(a, b) == grevlex.compare(a, b));
}

TEST_CASE("context validation") {
    CHECK_THROWS_AS(make_context(4, {"x"}), Error); // p not prime
    CHECK_THROWS_AS(make_context(2, {}), Error);    // no variables
    CHECK_THROWS_AS(make_context(2, {"x", "y"}, {1, 0}), Error);
    RingContext ctx = make_context(2, {"x", "y", "z"});
    ctx.relations = {parse_polynomial(ctx, "x^3 + y^2")}; // inhomogeneous
    CHECK_THROWS_AS(ctx.validate(), Error);
    RingContext cone = make_context(
        2, {"x", "y", "z"}, {},
        {parse_polynomial(make_context(2, {"x", "y", "z"}), "x^3+y^3+z^3")});
    CHECK(cone.standard_graded());
    CHECK(cone.digest() != ctx.digest());
}

TEST_CASE("parse/print round trip") {
    RingContext ctx = make_context(11, {"x", "y"});
    std::mt19937 rng(404);
    for (int i = 0; i < 50; ++i) {
        Polynomial f = random_poly(ctx, rng);
        CHECK(parse_polynomial(ctx, print_polynomial(ctx, f)) == f);
    }
    // greedy variable-word decomposition and optional '*'
    CHECK(P(ctx, "xy") == P(ctx, "x*y"));
    CHECK(P(ctx, "3x^2y - 14") == P(ctx, "3*x^2*y + 8"));
    CHECK_THROWS_AS(P(ctx, "x + w"), Error);
    CHECK_THROWS_AS(P(ctx, "x ^"), Error);
}

TEST_CASE("checked exponent arithmetic") {
    CHECK(checked_pow(2, 10) == 1024);
    CHECK_THROWS_AS(checked_pow(2, 64), Error);
    CHECK_THROWS_AS(checked_mul(Exp(1) << 60, Exp(1) << 10), Error);
    CHECK(checked_add(3, 4) == 7);
}
