#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "tckit/groebner.hpp"

using namespace tckit;

namespace {

RingContext cone(std::uint32_t p) {
    RingContext ctx = make_context(p, {"x", "y", "z"});
    return make_context(p, {"x", "y", "z"}, {}, {parse_polynomial(ctx, "x^3+y^3+z^3")});
}

std::vector<std::string> printed(const RingContext& ctx, const GroebnerBasis& gb) {
    std::vector<std::string> out;
    for (const auto& f : gb.basis) out.push_back(print_polynomial(ctx, f));
    return out;
}

Polynomial random_poly(const RingContext& ctx, std::mt19937& rng) {
    std::uniform_int_distribution<unsigned> nterms(1, 4);
    std::uniform_int_distribution<Exp> expd(0, 4);
    std::uniform_int_distribution<Coeff> coeffd(1, ctx.p - 1);
    std::vector<Term> terms;
    for (unsigned i = 0, n = nterms(rng); i < n; ++i) {
        Monomial m = Monomial::one(ctx.arity());
        for (auto& e : m.e) e = expd(rng);
        terms.push_back({m, coeffd(rng)});
    }
    Polynomial f = Polynomial::make(ctx.arity(), std::move(terms), ctx.p);
    return f.is_zero() ? Polynomial::variable(ctx.arity(), 0) : f;
}

} // namespace

TEST_CASE("reduced bases of small ideals") {
    RingContext ctx = make_context(5, {"x", "y"});
    GroebnerBasis g1 = buchberger(make_ideal(ctx, std::vector<std::string>{"x"}));
    CHECK(printed(ctx, g1) == std::vector<std::string>{"x"});

    GroebnerBasis g2 =
        buchberger(make_ideal(ctx, std::vector<std::string>{"x^2+y^2", "x^2-y^2"}));
    CHECK(printed(ctx, g2) == std::vector<std::string>{"y^2", "x^2"});

    RingContext c3 = make_context(5, {"x", "y", "z"});
    TermOrder lex = TermOrder::parse("lex");
    GroebnerBasis g3 = buchberger(make_ideal(c3, std::vector<std::string>{"x-y", "y-z"}), lex);
    CHECK(printed(c3, g3) == std::vector<std::string>{"y + 4*z", "x + 4*z"});
}

TEST_CASE("normal form") {
    RingContext ctx = make_context(2, {"x", "y", "z"});
    GroebnerBasis gx = buchberger(make_ideal(ctx, std::vector<std::string>{"x"}));
    CHECK(normal_form(ctx, parse_polynomial(ctx, "x^2"), gx).is_zero());
    CHECK(normal_form(ctx, parse_polynomial(ctx, "y+1"), gx) ==
          parse_polynomial(ctx, "y+1"));

    // x^4 falls into (y^2, z^2) once x^3 = y^3 + z^3 is adjoined
    GroebnerBasis g =
        buchberger(make_ideal(ctx, std::vector<std::string>{"y^2", "z^2", "x^3+y^3+z^3"}));
    CHECK(normal_form(ctx, parse_polynomial(ctx, "x^4"), g).is_zero());
}

TEST_CASE("ideal membership in a quotient ring") {
    RingContext plain = make_context(3, {"x"});
    CHECK(ideal_membership(parse_polynomial(plain, "x^2"),
                           make_ideal(plain, std::vector<std::string>{"x"})));
    CHECK_FALSE(ideal_membership(parse_polynomial(plain, "x"),
                                 make_ideal(plain, std::vector<std::string>{"x^2"})));

    RingContext R = cone(2);
    IdealSpec I = make_ideal(R, std::vector<std::string>{"y^2", "z^2"});
    CHECK(ideal_membership(parse_polynomial(R, "x^4"), I));
}

TEST_CASE("membership cofactors replay") {
    RingContext R = cone(2);
    IdealSpec I = make_ideal(R, std::vector<std::string>{"y^2", "z^2"});
    Polynomial f = parse_polynomial(R, "x^4");
    auto cof = membership_cofactors(f, I);
    REQUIRE(cof.has_value());
    REQUIRE(cof->size() == I.gens.size() + R.relations.size());
    // f = sum cof_i gens_i + sum cof_j rel_j identically in the polynomial ring
    Polynomial acc = Polynomial::zero(3);
    for (std::size_t i = 0; i < I.gens.size(); ++i)
        acc = poly_add(acc, poly_mul((*cof)[i], I.gens[i], R.p), R.p);
    for (std::size_t j = 0; j < R.relations.size(); ++j)
        acc = poly_add(acc, poly_mul((*cof)[I.gens.size() + j], R.relations[j], R.p), R.p);
    CHECK(acc == f);

    CHECK_FALSE(membership_cofactors(parse_polynomial(R, "x"), I).has_value());
}

TEST_CASE("ideal equality") {
    RingContext ctx = make_context(7, {"x", "y"});
    auto I = [&](std::vector<std::string> g) { return make_ideal(ctx, g); };
    CHECK(ideal_equal(I({"x", "x+y"}), I({"x", "y"})));
    CHECK_FALSE(ideal_equal(I({"x^2"}), I({"x"})));
    CHECK(ideal_equal(I({"x+y", "y"}), I({"x", "y-x"})));
    RingContext other = make_context(5, {"x", "y"});
    CHECK_THROWS_AS(ideal_equal(I({"x"}), make_ideal(other, std::vector<std::string>{"x"})),
                    ContextMismatchError);
}

TEST_CASE("division contract") {
    RingContext ctx = make_context(7, {"x", "y", "z"});
    std::mt19937 rng(515);
    TermOrder order;
    for (int trial = 0; trial < 40; ++trial) {
        Polynomial f = random_poly(ctx, rng);
        std::vector<Polynomial> divisors = {random_poly(ctx, rng), random_poly(ctx, rng)};
        Division d = poly_divide(ctx, f, divisors, order);
        Polynomial acc = d.remainder;
        for (std::size_t i = 0; i < divisors.size(); ++i)
            acc = poly_add(acc, poly_mul(d.quotients[i], divisors[i], 7), 7);
        CHECK(acc == f);
        // no remainder term is divisible by a divisor leading term
        for (const Term& t : d.remainder.terms())
            for (const auto& g : divisors)
                CHECK_FALSE(g.leading(order).m.divides(t.m));
    }
}

TEST_CASE("basis determinism and idempotence") {
    RingContext ctx = make_context(3, {"x", "y", "z"});
    std::mt19937 rng(616);
    for (int trial = 0; trial < 10; ++trial) {
        IdealSpec I = make_ideal(ctx, std::vector<Polynomial>{random_poly(ctx, rng),
                                                              random_poly(ctx, rng)});
        GbCache::instance().clear();
        GroebnerBasis a = buchberger(I);
        GbCache::instance().clear();
        GroebnerBasis b = buchberger(I);
        CHECK(a.basis == b.basis);
        GroebnerBasis again = buchberger(make_ideal(ctx, a.basis));
        CHECK(again.basis == a.basis);
        // every input generator reduces to zero
        for (const auto& g : I.gens) CHECK(normal_form(ctx, g, a).is_zero());
    }
}

TEST_CASE("tracked basis representations") {
    RingContext ctx = make_context(5, {"x", "y"});
    IdealSpec I = make_ideal(ctx, std::vector<std::string>{"x^2+y^2", "x^2-y^2"});
    GroebnerBasis gb = buchberger(I, TermOrder{}, /*track_cofactors=*/true);
    REQUIRE(gb.has_reprs());
    for (std::size_t i = 0; i < gb.basis.size(); ++i) {
        Polynomial acc = Polynomial::zero(2);
        for (std::size_t j = 0; j < I.gens.size(); ++j)
            acc = poly_add(acc, poly_mul(gb.reprs[i][j], I.gens[j], 5), 5);
        CHECK(acc == gb.basis[i]);
    }
}

TEST_CASE("cache serialization") {
    RingContext ctx = make_context(2, {"x", "y"});
    IdealSpec I = make_ideal(ctx, std::vector<std::string>{"x^2", "x+y"});
    GroebnerBasis gb = buchberger(I);
    std::string key = gb.source_digest;
    std::string blob = serialize_basis(ctx, gb, key);
    CHECK(blob.rfind("tckit-gb v1 " + key, 0) == 0);
    auto back = deserialize_basis(ctx, blob, key);
    REQUIRE(back.has_value());
    CHECK(back->basis == gb.basis);
    CHECK_FALSE(deserialize_basis(ctx, blob, "deadbeef").has_value());
    CHECK_FALSE(deserialize_basis(ctx, "garbage", key).has_value());
}

TEST_CASE("disk cache round trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "tckit-test-cache";
    fs::remove_all(dir);
    GbCache::instance().set_directory(dir.string());
    RingContext ctx = make_context(2, {"x", "y"});
    IdealSpec I = make_ideal(ctx, std::vector<std::string>{"x^3", "x*y+y^2"});
    GbCache::instance().clear();
    GroebnerBasis gb = buchberger(I);
    // drop memory; the disk copy must satisfy the next request
    GbCache::instance().clear();
    GroebnerBasis again = buchberger(I);
    CHECK(again.basis == gb.basis);
    // corrupt entry is ignored and recomputed
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::ofstream out(entry.path());
        out << "tckit-gb v1 wrongkey\nx\n";
    }
    GbCache::instance().clear();
    GroebnerBasis third = buchberger(I);
    CHECK(third.basis == gb.basis);
    fs::remove_all(dir);
}
