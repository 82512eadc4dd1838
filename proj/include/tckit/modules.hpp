#pragma once

#include <optional>
#include <vector>

#include "tckit/certificate.hpp"
#include "tckit/groebner.hpp"
#include "tckit/poly.hpp"

namespace tckit {

struct GradedFreeModule {
    std::vector<long long> shifts; // degree twists; rank = size
    std::size_t rank() const { return shifts.size(); }
};

// Graded free module plus a homogeneous relation matrix; columns are relation
// vectors. Carrier for the Frobenius functor on presentations.
struct PresentedModule {
    GradedFreeModule ambient;
    std::vector<std::vector<Polynomial>> relations; // relations[j][i]: column j, row i
    bool graded = true;
};

struct ModuleElement {
    std::vector<Polynomial> coords;
    std::size_t rank() const { return coords.size(); }
};

struct SubmoduleSpec {
    std::vector<ModuleElement> gens;
};

// Checks shape and, when graded, that every nonzero entry of each column has
// a consistent degree: deg(entry_ij) + shift_i constant down the column.
void validate_module(const RingContext& ctx, const PresentedModule& M);

PresentedModule frobenius_functor(const RingContext& ctx, const PresentedModule& M, unsigned e);

// Generators are coordinatewise p^e-th powers of N's generators, viewed
// inside frobenius_functor(M, e).
SubmoduleSpec bracket_image(const RingContext& ctx, const SubmoduleSpec& N, unsigned e);

// ---- module Groebner bases (position over term) ----

struct ModuleGB {
    std::vector<ModuleElement> basis;
    TermOrder term_order;
    // basis[i] = sum_j reprs[i][j] * input[j] when tracked
    std::vector<std::vector<Polynomial>> reprs;
};

// Reduced module GB under position-over-term with grevlex on terms, positions
// in declaration order. The input list is N's generators, then M's relation
// columns, then (context relation) * (unit vector) for every coordinate.
ModuleGB module_groebner(const RingContext& ctx, const SubmoduleSpec& N,
                         const PresentedModule& M, bool track_cofactors = false);

struct ModuleDivision {
    ModuleElement remainder;
    std::vector<Polynomial> quotients;
};

ModuleDivision module_divide(const RingContext& ctx, const ModuleElement& u,
                             const std::vector<ModuleElement>& divisors,
                             const TermOrder& order);

// u in N + (relations of M) + (context relations)*M.
bool module_membership(const RingContext& ctx, const ModuleElement& u, const SubmoduleSpec& N,
                       const PresentedModule& M);

std::optional<ClosureCertificate> module_frobenius_closure_membership(
    const RingContext& ctx, const ModuleElement& u, const SubmoduleSpec& N,
    const PresentedModule& M, unsigned e_max);

enum class Trilean { False, True, Unknown };

struct CoprimaryResult {
    Trilean verdict = Trilean::Unknown;
    std::optional<unsigned> n; // least n with m^n M inside N, when True
};

// True iff m^n M subset N + relations for some n; the least such n is found by
// ascending search. A definitive False requires an infinite staircase ray;
// otherwise the capped search reports Unknown, never a false verdict.
CoprimaryResult is_m_coprimary(const RingContext& ctx, const PresentedModule& M,
                               const SubmoduleSpec& N, unsigned cap = 64);

// Dimensions of the degree-window components W_j of R^{1/q} / m^n R^{1/q}
// (equal to the dual dimensions dim V_{-j}). Requires a relation-free
// standard graded context; q must be a power of p.
std::vector<std::pair<unsigned, unsigned>> graded_dual_dimensions(const RingContext& ctx,
                                                                  Exp q, unsigned n);

std::string print_module_element(const RingContext& ctx, const ModuleElement& u);

} // namespace tckit
