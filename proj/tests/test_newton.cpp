#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tckit/newton.hpp"

using namespace tckit;

namespace {

// independent oracle: enumerate the box [0, maxexp]^n and keep the monomials
// in the closure, minimalized by divisibility
MonomialIdeal closure_by_enumeration(const MonomialIdeal& I) {
    std::uint64_t cap = 0;
    for (const auto& g : I.gens)
        for (auto e : g) cap = std::max(cap, e);
    std::vector<ExpVec> hits;
    ExpVec a(I.arity, 0);
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == I.arity) {
            if (closure_membership(a, I)) hits.push_back(a);
            return;
        }
        for (std::uint64_t v = 0; v <= cap; ++v) {
            a[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return make_monomial_ideal(I.arity, std::move(hits));
}

} // namespace

TEST_CASE("monomial ideal plumbing") {
    MonomialIdeal I = make_monomial_ideal(2, {{2, 0}, {0, 2}, {2, 1}});
    CHECK(I.generator_count() == 2); // (2,1) is swallowed by (2,0)
    CHECK(dominates({3, 1}, {2, 0}));
    CHECK_FALSE(dominates({1, 1}, {2, 0}));
    CHECK(monomial_membership({2, 5}, I));
    CHECK_FALSE(monomial_membership({1, 1}, I));
    MonomialIdeal back = parse_monomial_ideal(print_monomial_ideal(I));
    CHECK(back.gens == I.gens);
    CHECK_THROWS_AS(parse_monomial_ideal("(x^2, y^0 + z)"), Error);
}

TEST_CASE("closure membership of exponent vectors") {
    MonomialIdeal I = make_monomial_ideal(2, {{2, 0}, {0, 2}});
    CHECK(closure_membership({2, 0}, I)); // a generator
    CHECK(closure_membership({1, 1}, I)); // midpoint of the two generators
    CHECK_FALSE(closure_membership({1, 0}, I));
    CHECK_FALSE(closure_membership({0, 0}, I));
    CHECK(closure_membership({5, 7}, I));
}

TEST_CASE("integral closure generators") {
    MonomialIdeal sq = make_monomial_ideal(2, {{2, 0}, {0, 2}});
    MonomialIdeal cl = integral_closure_generators(sq);
    CHECK(cl.gens == std::vector<ExpVec>(
                         make_monomial_ideal(2, {{2, 0}, {1, 1}, {0, 2}}).gens));

    MonomialIdeal principal = make_monomial_ideal(2, {{1, 0}});
    CHECK(integral_closure_generators(principal).gens == principal.gens);

    MonomialIdeal cubes = make_monomial_ideal(3, {{3, 0, 0}, {0, 3, 0}, {0, 0, 3}});
    MonomialIdeal clc = integral_closure_generators(cubes);
    CHECK(monomial_membership({1, 1, 1}, clc)); // xyz, the barycenter
    CHECK(clc.gens == closure_by_enumeration(cubes).gens);
}

TEST_CASE("closure generators match the enumeration oracle") {
    std::mt19937 rng(808);
    std::uniform_int_distribution<std::size_t> nd(1, 3);
    std::uniform_int_distribution<std::size_t> dd(1, 3);
    std::uniform_int_distribution<std::uint64_t> ed(0, 4);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = nd(rng), d = dd(rng);
        std::vector<ExpVec> gens;
        for (std::size_t i = 0; i < d; ++i) {
            ExpVec v(n, 0);
            bool nz = false;
            for (auto& e : v) {
                e = ed(rng);
                nz = nz || e > 0;
            }
            if (nz) gens.push_back(v);
        }
        if (gens.empty()) continue;
        MonomialIdeal I = make_monomial_ideal(n, std::move(gens));
        CHECK(integral_closure_generators(I).gens == closure_by_enumeration(I).gens);
    }
}

TEST_CASE("monomial powers") {
    MonomialIdeal I = make_monomial_ideal(2, {{2, 0}, {0, 2}});
    MonomialIdeal I2 = monomial_power(I, 2);
    CHECK(I2.gens == std::vector<ExpVec>(
                         make_monomial_ideal(2, {{4, 0}, {2, 2}, {0, 4}}).gens));
    CHECK(monomial_power(I, 1).gens == I.gens);
}

TEST_CASE("containment checks for powers of closures") {
    MonomialIdeal sq = make_monomial_ideal(2, {{2, 0}, {0, 2}});
    BriansconSkodaReport r0 = briancon_skoda_check(sq, 0);
    CHECK(r0.pass);
    CHECK(r0.d == 2);

    MonomialIdeal cubes = make_monomial_ideal(3, {{3, 0, 0}, {0, 3, 0}, {0, 0, 3}});
    CHECK(briancon_skoda_check(cubes, 1).pass);

    // principal ideals: closure(I^{1+k}) = I^{1+k}, any k
    MonomialIdeal principal = make_monomial_ideal(2, {{2, 3}});
    for (unsigned k = 0; k < 4; ++k) {
        BriansconSkodaReport r = briancon_skoda_check(principal, k);
        CHECK(r.pass);
        CHECK_FALSE(r.counterexample.has_value());
    }
}
