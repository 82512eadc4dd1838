#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tckit/errors.hpp"

namespace tckit {

using Coeff = std::uint32_t; // residue in [0, p)
using Exp = std::uint64_t;

// ---- arithmetic mod p ----

inline Coeff fadd(Coeff a, Coeff b, std::uint32_t p) {
    std::uint64_t s = std::uint64_t(a) + b;
    return Coeff(s >= p ? s - p : s);
}

inline Coeff fneg(Coeff a, std::uint32_t p) { return a == 0 ? 0 : Coeff(p - a); }

inline Coeff fsub(Coeff a, Coeff b, std::uint32_t p) { return fadd(a, fneg(b, p), p); }

inline Coeff fmul(Coeff a, Coeff b, std::uint32_t p) {
    return Coeff((std::uint64_t(a) * b) % p);
}

Coeff finv(Coeff a, std::uint32_t p);

bool is_prime(std::uint64_t n);

// p^e with overflow check.
Exp checked_pow(std::uint64_t base, unsigned e);
Exp checked_mul(Exp a, Exp b);
Exp checked_add(Exp a, Exp b);

// ---- monomials ----

struct Monomial {
    std::vector<Exp> e;

    static Monomial one(std::size_t arity) { return Monomial{std::vector<Exp>(arity, 0)}; }
    std::size_t arity() const { return e.size(); }
    Exp total_degree() const;
    bool is_one() const;
    bool divides(const Monomial& m) const;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial mono_mul(const Monomial& a, const Monomial& b);
Monomial mono_div(const Monomial& a, const Monomial& b); // requires b | a
Monomial mono_lcm(const Monomial& a, const Monomial& b);
Monomial mono_pow(const Monomial& a, Exp k);

// Storage order: grevlex in the declared variable order. Returns +1 if a > b.
int grevlex_cmp(const Monomial& a, const Monomial& b);

struct Term {
    Monomial m;
    Coeff c = 0;
    friend bool operator==(const Term&, const Term&) = default;
};

// ---- term orders ----

struct TermOrder {
    enum class Kind { Grevlex, Lex, GradedLex };
    Kind kind = Kind::Grevlex;
    // perm[k] = variable index with priority k; empty means identity.
    std::vector<std::size_t> perm;

    int compare(const Monomial& a, const Monomial& b) const; // +1 if a > b
    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
    std::string text() const;
    static TermOrder parse(const std::string& name);
};

// ---- polynomials ----

// Sparse multivariate polynomial over F_p. Terms are kept sorted descending
// under grevlex in the declared variable order; no zero coefficients, no
// duplicate monomials. Immutable after construction.
class Polynomial {
public:
    Polynomial() = default;
    static Polynomial zero(std::size_t arity) { return Polynomial(arity, {}); }
    static Polynomial constant(std::size_t arity, Coeff c, std::uint32_t p);
    static Polynomial variable(std::size_t arity, std::size_t i);
    // Normalizes: reduces coefficients mod p, merges duplicates, drops zeros.
    static Polynomial make(std::size_t arity, std::vector<Term> terms, std::uint32_t p);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const Term& leading_storage() const { return terms_.front(); }
    // Leading term under an arbitrary order (linear scan).
    const Term& leading(const TermOrder& order) const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    Polynomial(std::size_t arity, std::vector<Term> terms)
        : arity_(arity), terms_(std::move(terms)) {}
    std::size_t arity_ = 0;
    std::vector<Term> terms_; // sorted descending under grevlex_cmp
};

Polynomial poly_add(const Polynomial& f, const Polynomial& g, std::uint32_t p);
Polynomial poly_sub(const Polynomial& f, const Polynomial& g, std::uint32_t p);
Polynomial poly_neg(const Polynomial& f, std::uint32_t p);
Polynomial poly_scale(const Polynomial& f, Coeff c, std::uint32_t p);
Polynomial poly_mul_term(const Polynomial& f, const Term& t, std::uint32_t p);
Polynomial poly_mul(const Polynomial& f, const Polynomial& g, std::uint32_t p);
Polynomial poly_pow(const Polynomial& f, Exp k, std::uint32_t p);

// ---- ring context ----

// The ambient graded ring R = F_p[names] / (relations), with positive integer
// variable degrees. Relations empty means the polynomial ring itself.
struct RingContext {
    std::uint32_t p = 2;
    std::vector<std::string> names;
    std::vector<std::uint32_t> weights; // all 1 for standard graded
    std::vector<Polynomial> relations;

    std::size_t arity() const { return names.size(); }
    bool standard_graded() const;
    void validate() const; // p prime, arity >= 1, weights >= 1, relations homogeneous
    std::string digest() const;
    friend bool operator==(const RingContext&, const RingContext&) = default;
};

RingContext make_context(std::uint32_t p, std::vector<std::string> names,
                         std::vector<std::uint32_t> weights = {},
                         std::vector<Polynomial> relations = {});

// Weighted degree of a monomial.
Exp weighted_degree(const RingContext& ctx, const Monomial& m);

// ---- spec-level operations ----

Polynomial multiply(const RingContext& ctx, const Polynomial& f, const Polynomial& g);

// f^{p^e}, term by term via the additive Frobenius (c^{p^e} = c in F_p).
Polynomial frobenius_power_poly(const RingContext& ctx, const Polynomial& f, unsigned e);

struct DegreeInfo {
    bool zero = false; // degree of 0 is "minus infinity"
    Exp degree = 0;
    bool homogeneous = true;
};

DegreeInfo degree_check(const RingContext& ctx, const Polynomial& f);

// ---- text syntax ----

// Signed integer coefficients, `*` optional, `^` for powers; coefficients
// reduced mod p on parse. Variable words without separators are decomposed
// greedily into declared names ("xy" -> x*y when x, y are declared).
Polynomial parse_polynomial(const RingContext& ctx, const std::string& text);
std::string print_polynomial(const RingContext& ctx, const Polynomial& f);
std::string print_monomial(const RingContext& ctx, const Monomial& m);

// FNV-1a digest of arbitrary text, hex-encoded.
std::string fnv_digest(const std::string& data);

} // namespace tckit
