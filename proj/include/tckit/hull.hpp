#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tckit/errors.hpp"
#include "tckit/poly.hpp"

namespace tckit {

// ---- exponents in Z[1/p] ----

// value = num / p^level, kept in lowest terms w.r.t. p.
struct FracExponent {
    long long num = 0;
    unsigned level = 0;

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return level == 0; }
    friend bool operator==(const FracExponent&, const FracExponent&) = default;
};

FracExponent make_frac(long long num, unsigned level, std::uint32_t p);
FracExponent frac_add(const FracExponent& a, const FracExponent& b, std::uint32_t p);
FracExponent frac_sub(const FracExponent& a, const FracExponent& b, std::uint32_t p);
FracExponent frac_neg(const FracExponent& a);
int frac_cmp(const FracExponent& a, const FracExponent& b, std::uint32_t p);
long long frac_floor(const FracExponent& a, std::uint32_t p);
std::string frac_text(const FracExponent& a, std::uint32_t p);

struct FracVector {
    std::vector<FracExponent> c;
    std::size_t arity() const { return c.size(); }
    friend bool operator==(const FracVector&, const FracVector&) = default;
};

FracVector frac_vec_add(const FracVector& a, const FracVector& b, std::uint32_t p);
FracVector frac_vec_neg(const FracVector& a);
// all coordinates of a <= those of b
bool frac_vec_leq(const FracVector& a, const FracVector& b, std::uint32_t p);
// strict order of the coordinatewise partial order: a <= b and a != b
bool frac_vec_lt(const FracVector& a, const FracVector& b, std::uint32_t p);

struct FracVecLess {
    std::uint32_t p = 2;
    bool operator()(const FracVector& a, const FracVector& b) const;
};

// ---- parametric support families ----

// Per-coordinate behaviour of a family indexed by e in N:
//   Constant:   value
//   Arithmetic: -(alpha*e) - beta, alpha > 0 (strictly decreasing in e)
//   Geometric:  offset - gamma/p^e, gamma > 0 (strictly increasing in e)
struct FamilyCoord {
    enum class Kind { Constant, Arithmetic, Geometric };
    Kind kind = Kind::Constant;
    FracExponent value;     // Constant
    std::uint64_t alpha = 0;
    FracExponent beta;      // Arithmetic
    std::uint64_t gamma = 0;
    FracExponent offset;    // Geometric

    FracExponent eval(unsigned e, std::uint32_t p) const;
};

struct Family {
    std::vector<FamilyCoord> coords;
    unsigned e_start = 0;
    std::set<unsigned> excluded; // indices merged away during multiplication

    FracVector eval(unsigned e, std::uint32_t p) const;
    bool active(unsigned e) const { return e >= e_start && !excluded.count(e); }
};

// Validates shape: at least one non-constant coordinate (injectivity in e)
// and no positive values from e_start on.
Family make_family(std::vector<FamilyCoord> coords, unsigned e_start, std::uint32_t p);

// supp(f) of a formal sum: explicit points plus parametric families, all
// coordinates <= 0.
struct SupportDescription {
    std::uint32_t p = 2;
    std::size_t arity = 0;
    std::vector<FracVector> finite;
    std::vector<Family> families;
};

enum class DccVerdict { Pass, Fail, Indeterminate };

struct DccReport {
    DccVerdict verdict = DccVerdict::Indeterminate;
    std::vector<FracVector> minimal_elements; // for Pass
    std::vector<FracVector> descending_chain; // for Fail
    std::string note;
};

// Finite sets always pass. A family passes when it is provably an antichain:
// one coordinate strictly increasing in e while another strictly decreases.
// A family that strictly descends yields an explicit chain; anything else is
// indeterminate.
DccReport dcc_check(const SupportDescription& S);

// ---- formal sums ----

// Element of the fractional inverse-monomial module: finite terms plus
// families with coefficients constant in the family index.
struct FormalSum {
    std::uint32_t p = 2;
    std::size_t arity = 0;
    std::map<FracVector, Coeff, FracVecLess> finite;
    struct FamilyTerm {
        Family fam;
        Coeff coeff = 0;
    };
    std::vector<FamilyTerm> families;

    explicit FormalSum(std::uint32_t p_ = 2, std::size_t arity_ = 0)
        : p(p_), arity(arity_), finite(FracVecLess{p_}) {}
    bool is_zero() const { return finite.empty() && families.empty(); }
    SupportDescription support() const;
};

FormalSum make_formal_sum(std::uint32_t p, std::size_t arity,
                          std::vector<std::pair<FracVector, Coeff>> terms,
                          std::vector<FormalSum::FamilyTerm> families = {});

FormalSum formal_add(const FormalSum& a, const FormalSum& b);

// fractional polynomial over R^{1/q}: finitely many terms x^{b/q}, b >= 0
struct FracPoly {
    std::uint32_t p = 2;
    std::size_t arity = 0;
    std::vector<std::pair<FracVector, Coeff>> terms;
};

FracPoly make_frac_poly(std::uint32_t p, std::size_t arity,
                        std::vector<std::pair<FracVector, Coeff>> terms);
FracPoly frac_poly_mul(const FracPoly& a, const FracPoly& b);
FracPoly frac_poly_add(const FracPoly& a, const FracPoly& b);

struct ScalarProduct {
    FormalSum result;
    bool exact = true; // provably complete at the requested truncation
};

// Formal product with the kill rule: a term dies when some exponent
// coordinate is strictly positive. Families are kept symbolic when the shift
// preserves their shape and evaluated up to index E otherwise.
ScalarProduct scalar_multiply(const FracPoly& s, const FormalSum& f, unsigned truncation_E);

struct SoclePairing {
    FracVector witness_exponent; // a(0) >= 0: multiply by x^{a(0)}
    Coeff constant = 0;          // the surviving coefficient, nonzero
};

// Picks a minimal support element -a(0) and certifies x^{a(0)} f = c_{a(0)}
// with every other term killed.
SoclePairing socle_pairing(const FormalSum& f);

struct NonvanishingWitness {
    FracVector survivor; // the e = t term of x2^t f
    unsigned survivor_count_at_E = 0;
    FormalSum f;         // the standard pathological element sum_e x1^{-1/p^e} x2^{-e}
};

NonvanishingWitness nonvanishing_witness(unsigned t, unsigned E, std::uint32_t p);

// Evaluate all families of f at indices <= E and merge into a finite map.
std::map<FracVector, Coeff, FracVecLess> enumerate_terms(const FormalSum& f, unsigned E);

using ChainLink = std::pair<FracVector, FracVector>; // (a, b), chain over a+b

// Brute-force search for a weakly descending chain of length L of pairwise
// sums with all b-components distinct; none should exist above the bound
// forced by |A| and |B|.
std::optional<std::vector<ChainLink>> chain_violation_search(const std::vector<FracVector>& A,
                                                             const std::vector<FracVector>& B,
                                                             unsigned L, std::uint32_t p);

struct FloorFactorization {
    std::vector<std::uint64_t> integer_part; // monomial in m^n
    FracVector remainder;                    // coordinates in [0, 1)
};

// Writes each coordinate as floor + remainder; the integer part has total
// degree >= n whenever sum a_i >= n + mu - 1.
FloorFactorization floor_factor(const FracVector& a, unsigned n, unsigned mu,
                                    std::uint32_t p);

// ---- text form ----
// terms `c * x1^(-a/p^e) * x2^(-b)`; families `family(e){ x1^(-1/p^e) * x2^(-e) }`
FormalSum parse_formal_sum(std::uint32_t p, std::size_t arity, const std::string& text);
FracPoly parse_frac_poly(std::uint32_t p, std::size_t arity, const std::string& text);
std::string print_formal_sum(const FormalSum& f);

} // namespace tckit
