#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tckit/errors.hpp"

namespace tckit {

using ExpVec = std::vector<std::uint64_t>;

// Monomial ideal as an antichain of exponent vectors (minimal generators).
struct MonomialIdeal {
    std::size_t arity = 0;
    std::vector<ExpVec> gens; // minimalized, sorted

    std::size_t generator_count() const { return gens.size(); }
};

MonomialIdeal make_monomial_ideal(std::size_t arity, std::vector<ExpVec> exponents);

// Text form `(x^2*y, y^3)` with variables x, y, z (by arity) or x1, x2, ...
MonomialIdeal parse_monomial_ideal(const std::string& text);
std::string print_monomial_ideal(const MonomialIdeal& I);

// b divides a, i.e. a is in the monomial ideal generated by b
bool dominates(const ExpVec& a, const ExpVec& b);

// x^a in I (plain monomial ideal membership: divisible by some generator)
bool monomial_membership(const ExpVec& a, const MonomialIdeal& I);

// x^a in the integral closure of I: a in conv(gens) + R^n_{>=0}, decided
// exactly over the integers via the facet inequalities of the Newton
// polyhedron.
bool closure_membership(const ExpVec& a, const MonomialIdeal& I);

// Minimal monomial generators of the integral closure; the search box
// [0, max per-coordinate exponent]^n contains every minimal generator.
MonomialIdeal integral_closure_generators(const MonomialIdeal& I);

// I^m by minimalized Minkowski sums of exponents.
MonomialIdeal monomial_power(const MonomialIdeal& I, unsigned m);

struct BriansconSkodaReport {
    bool pass = false;
    unsigned d = 0, k = 0;
    std::optional<ExpVec> counterexample; // a fail signals a bug
};

// closure(I^{d+k}) subset I^{k+1}, the regular-ring shadow of the
// Briancon-Skoda containment (d = generator count).
BriansconSkodaReport briancon_skoda_check(const MonomialIdeal& I, unsigned k);

} // namespace tckit
