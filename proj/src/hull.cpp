#include "tckit/hull.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <limits>

namespace tckit {

namespace {

using i128 = __int128;

i128 pow_i128(std::uint32_t p, unsigned k) {
    i128 r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= p;
        if (r > (i128(1) << 100)) throw OverflowError("p-power overflow in fractional exponent");
    }
    return r;
}

long long to_ll(i128 v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw OverflowError("fractional exponent numerator overflow");
    return static_cast<long long>(v);
}

} // namespace

FracExponent make_frac(long long num, unsigned level, std::uint32_t p) {
    while (level > 0 && num % static_cast<long long>(p) == 0) {
        num /= static_cast<long long>(p);
        --level;
    }
    if (num == 0) level = 0;
    return FracExponent{num, level};
}

FracExponent frac_add(const FracExponent& a, const FracExponent& b, std::uint32_t p) {
    unsigned L = std::max(a.level, b.level);
    i128 n = i128(a.num) * pow_i128(p, L - a.level) + i128(b.num) * pow_i128(p, L - b.level);
    return make_frac(to_ll(n), L, p);
}

FracExponent frac_neg(const FracExponent& a) { return FracExponent{-a.num, a.level}; }

FracExponent frac_sub(const FracExponent& a, const FracExponent& b, std::uint32_t p) {
    return frac_add(a, frac_neg(b), p);
}

int frac_cmp(const FracExponent& a, const FracExponent& b, std::uint32_t p) {
    i128 va = i128(a.num) * pow_i128(p, b.level);
    i128 vb = i128(b.num) * pow_i128(p, a.level);
    if (va < vb) return -1;
    if (va > vb) return 1;
    return 0;
}

long long frac_floor(const FracExponent& a, std::uint32_t p) {
    if (a.level == 0) return a.num;
    i128 d = pow_i128(p, a.level);
    i128 q = i128(a.num) / d;
    if (i128(a.num) % d != 0 && a.num < 0) --q;
    return to_ll(q);
}

std::string frac_text(const FracExponent& a, std::uint32_t p) {
    if (a.level == 0) return std::to_string(a.num);
    i128 d = pow_i128(p, a.level);
    return std::to_string(a.num) + "/" + std::to_string(static_cast<long long>(d));
}

FracVector frac_vec_add(const FracVector& a, const FracVector& b, std::uint32_t p) {
    if (a.arity() != b.arity()) throw PreconditionError("arity mismatch in exponent sum");
    FracVector r;
    r.c.reserve(a.arity());
    for (std::size_t i = 0; i < a.arity(); ++i) r.c.push_back(frac_add(a.c[i], b.c[i], p));
    return r;
}

FracVector frac_vec_neg(const FracVector& a) {
    FracVector r;
    r.c.reserve(a.arity());
    for (const auto& x : a.c) r.c.push_back(frac_neg(x));
    return r;
}

bool frac_vec_leq(const FracVector& a, const FracVector& b, std::uint32_t p) {
    if (a.arity() != b.arity()) throw PreconditionError("arity mismatch in exponent compare");
    for (std::size_t i = 0; i < a.arity(); ++i)
        if (frac_cmp(a.c[i], b.c[i], p) > 0) return false;
    return true;
}

bool frac_vec_lt(const FracVector& a, const FracVector& b, std::uint32_t p) {
    return frac_vec_leq(a, b, p) && !(a == b);
}

bool FracVecLess::operator()(const FracVector& a, const FracVector& b) const {
    if (a.arity() != b.arity()) return a.arity() < b.arity();
    for (std::size_t i = 0; i < a.arity(); ++i) {
        int c = frac_cmp(a.c[i], b.c[i], p);
        if (c != 0) return c < 0;
    }
    return false;
}

// ---- families ----

FracExponent FamilyCoord::eval(unsigned e, std::uint32_t p) const {
    switch (kind) {
    case Kind::Constant:
        return value;
    case Kind::Arithmetic: {
        FracExponent ae{static_cast<long long>(alpha) * static_cast<long long>(e), 0};
        return frac_neg(frac_add(ae, beta, p));
    }
    case Kind::Geometric:
        return frac_sub(offset, make_frac(static_cast<long long>(gamma), e, p), p);
    }
    throw Error("unreachable family coordinate kind");
}

FracVector Family::eval(unsigned e, std::uint32_t p) const {
    FracVector v;
    v.c.reserve(coords.size());
    for (const auto& fc : coords) v.c.push_back(fc.eval(e, p));
    return v;
}

Family make_family(std::vector<FamilyCoord> coords, unsigned e_start, std::uint32_t p) {
    bool nonconst = false;
    FracExponent zero{};
    for (const auto& fc : coords) {
        switch (fc.kind) {
        case FamilyCoord::Kind::Constant:
            if (frac_cmp(fc.value, zero, p) > 0)
                throw PreconditionError("family has a positive constant coordinate");
            break;
        case FamilyCoord::Kind::Arithmetic:
            if (fc.alpha == 0) throw PreconditionError("arithmetic coordinate needs alpha > 0");
            nonconst = true;
            break;
        case FamilyCoord::Kind::Geometric:
            if (fc.gamma == 0) throw PreconditionError("geometric coordinate needs gamma > 0");
            nonconst = true;
            break;
        }
    }
    Family fam{std::move(coords), e_start, {}};
    if (!nonconst) throw PreconditionError("family must vary in e");
    for (std::size_t i = 0; i < fam.coords.size(); ++i) {
        const auto& fc = fam.coords[i];
        // arithmetic decreases, geometric increases toward its offset
        FracExponent worst = fc.kind == FamilyCoord::Kind::Geometric ? fc.offset
                                                                     : fc.eval(e_start, p);
        if (frac_cmp(worst, zero, p) > 0 && fc.kind != FamilyCoord::Kind::Geometric)
            throw PreconditionError("family coordinate positive at its start index");
        if (fc.kind == FamilyCoord::Kind::Geometric &&
            frac_cmp(fc.eval(e_start, p), zero, p) > 0)
            throw PreconditionError("family coordinate positive at its start index");
    }
    return fam;
}

// ---- dcc ----

namespace {

struct FamilyShape {
    bool has_increasing = false;
    bool has_decreasing = false;
};

FamilyShape classify(const Family& fam) {
    FamilyShape s;
    for (const auto& fc : fam.coords) {
        if (fc.kind == FamilyCoord::Kind::Arithmetic) s.has_decreasing = true;
        if (fc.kind == FamilyCoord::Kind::Geometric) s.has_increasing = true;
    }
    return s;
}

} // namespace

DccReport dcc_check(const SupportDescription& S) {
    DccReport rep;
    for (const auto& fam : S.families) {
        FamilyShape shape = classify(fam);
        if (shape.has_increasing && shape.has_decreasing) continue;
        if (shape.has_decreasing) {
            rep.verdict = DccVerdict::Fail;
            unsigned e0 = fam.e_start;
            for (unsigned k = 0; k < 3; ++k) {
                while (fam.excluded.count(e0)) ++e0;
                rep.descending_chain.push_back(fam.eval(e0, S.p));
                ++e0;
            }
            rep.note = "family descends strictly in every varying coordinate";
            return rep;
        }
        rep.verdict = DccVerdict::Indeterminate;
        rep.note = "family increases toward a limit; no antichain certificate";
        return rep;
    }
    rep.verdict = DccVerdict::Pass;
    // minimal elements of the finite part (families are antichains clear of it
    // only heuristically, so report finite minima only)
    for (const auto& v : S.finite) {
        bool minimal = true;
        for (const auto& w : S.finite)
            if (frac_vec_lt(w, v, S.p)) { minimal = false; break; }
        if (minimal) rep.minimal_elements.push_back(v);
    }
    rep.note = S.families.empty() ? "finite support" : "all families are antichains";
    return rep;
}

// ---- formal sums ----

SupportDescription FormalSum::support() const {
    SupportDescription S;
    S.p = p;
    S.arity = arity;
    for (const auto& [v, c] : finite)
        if (c != 0) S.finite.push_back(v);
    for (const auto& ft : families)
        if (ft.coeff != 0) S.families.push_back(ft.fam);
    return S;
}

FormalSum make_formal_sum(std::uint32_t p, std::size_t arity,
                          std::vector<std::pair<FracVector, Coeff>> terms,
                          std::vector<FormalSum::FamilyTerm> families) {
    FormalSum f(p, arity);
    FracExponent zero{};
    for (auto& [v, c] : terms) {
        if (v.arity() != arity) throw PreconditionError("term arity mismatch");
        for (const auto& x : v.c)
            if (frac_cmp(x, zero, p) > 0)
                throw PreconditionError("formal sum supports lie in the nonpositive orthant");
        Coeff cc = c % p;
        if (cc == 0) continue;
        auto it = f.finite.find(v);
        if (it == f.finite.end()) f.finite.emplace(v, cc);
        else {
            it->second = (it->second + cc) % p;
            if (it->second == 0) f.finite.erase(it);
        }
    }
    for (auto& ft : families) {
        if (ft.fam.coords.size() != arity) throw PreconditionError("family arity mismatch");
        Coeff cc = ft.coeff % p;
        if (cc == 0) continue;
        ft.coeff = cc;
        f.families.push_back(std::move(ft));
    }
    return f;
}

FormalSum formal_add(const FormalSum& a, const FormalSum& b) {
    if (a.p != b.p || a.arity != b.arity)
        throw ContextMismatchError("formal sums over different settings");
    FormalSum r = a;
    for (const auto& [v, c] : b.finite) {
        auto it = r.finite.find(v);
        if (it == r.finite.end()) r.finite.emplace(v, c);
        else {
            it->second = (it->second + c) % r.p;
            if (it->second == 0) r.finite.erase(it);
        }
    }
    for (const auto& ft : b.families) r.families.push_back(ft);
    return r;
}

FracPoly make_frac_poly(std::uint32_t p, std::size_t arity,
                        std::vector<std::pair<FracVector, Coeff>> terms) {
    FracPoly s;
    s.p = p;
    s.arity = arity;
    FracExponent zero{};
    std::map<FracVector, Coeff, FracVecLess> acc{FracVecLess{p}};
    for (auto& [v, c] : terms) {
        if (v.arity() != arity) throw PreconditionError("term arity mismatch");
        for (const auto& x : v.c)
            if (frac_cmp(x, zero, p) < 0)
                throw PreconditionError("fractional polynomial exponents must be nonnegative");
        Coeff cc = c % p;
        if (cc == 0) continue;
        acc[v] = (acc[v] + cc) % p;
    }
    for (const auto& [v, c] : acc)
        if (c != 0) s.terms.emplace_back(v, c);
    return s;
}

FracPoly frac_poly_mul(const FracPoly& a, const FracPoly& b) {
    if (a.p != b.p || a.arity != b.arity)
        throw ContextMismatchError("fractional polynomials over different settings");
    std::vector<std::pair<FracVector, Coeff>> terms;
    for (const auto& [va, ca] : a.terms)
        for (const auto& [vb, cb] : b.terms)
            terms.emplace_back(frac_vec_add(va, vb, a.p),
                               static_cast<Coeff>((std::uint64_t(ca) * cb) % a.p));
    return make_frac_poly(a.p, a.arity, std::move(terms));
}

FracPoly frac_poly_add(const FracPoly& a, const FracPoly& b) {
    if (a.p != b.p || a.arity != b.arity)
        throw ContextMismatchError("fractional polynomials over different settings");
    std::vector<std::pair<FracVector, Coeff>> terms = a.terms;
    terms.insert(terms.end(), b.terms.begin(), b.terms.end());
    return make_frac_poly(a.p, a.arity, std::move(terms));
}

// ---- scalar multiplication ----

namespace {

// shifted family outcome: killed outright, still symbolic, or a finite tail
// of surviving indices [fam.e_start, tail_bound]
struct ShiftOutcome {
    enum class Kind { Killed, Symbolic, FiniteTail } kind = Kind::Killed;
    Family fam;
    unsigned tail_bound = 0;
};

// least e with alpha*e + beta >= 0, given beta < 0
unsigned arithmetic_restart(std::uint64_t alpha, const FracExponent& beta, std::uint32_t p) {
    if (beta.num >= 0) return 0;
    i128 num = -i128(beta.num); // beta = num / p^level with num > 0 after negation
    i128 den = i128(alpha) * pow_i128(p, beta.level);
    i128 e = (num + den - 1) / den;
    return static_cast<unsigned>(to_ll(e));
}

// largest e with gamma / p^e >= d, for d > 0; nullopt when even e = 0 fails
std::optional<unsigned> geometric_kill_bound(std::uint64_t gamma, const FracExponent& d,
                                             std::uint32_t p) {
    // gamma / p^e >= num / p^level  <=>  gamma * p^level >= num * p^e
    i128 lhs = i128(gamma) * pow_i128(p, d.level);
    if (lhs < d.num) return std::nullopt;
    unsigned e = 0;
    i128 rhs = d.num;
    while (rhs * p <= lhs) {
        rhs *= p;
        ++e;
        if (e > 4096) throw OverflowError("runaway geometric bound");
    }
    return e;
}

ShiftOutcome shift_family(const Family& fam, const FracVector& delta, std::uint32_t p) {
    ShiftOutcome out;
    out.fam = fam;
    FracExponent zero{};
    bool finite_tail = false;
    unsigned bound = std::numeric_limits<unsigned>::max();
    for (std::size_t i = 0; i < fam.coords.size(); ++i) {
        FamilyCoord& fc = out.fam.coords[i];
        const FracExponent& d = delta.c[i];
        if (d.is_zero()) continue;
        switch (fc.kind) {
        case FamilyCoord::Kind::Constant:
            fc.value = frac_add(fc.value, d, p);
            if (frac_cmp(fc.value, zero, p) > 0) { out.kind = ShiftOutcome::Kind::Killed; return out; }
            break;
        case FamilyCoord::Kind::Arithmetic: {
            // -(alpha e) - beta + d = -(alpha e) - (beta - d)
            fc.beta = frac_sub(fc.beta, d, p);
            unsigned es = arithmetic_restart(fc.alpha, fc.beta, p);
            out.fam.e_start = std::max(out.fam.e_start, es);
            break;
        }
        case FamilyCoord::Kind::Geometric: {
            fc.offset = frac_add(fc.offset, d, p);
            if (frac_cmp(fc.offset, zero, p) > 0) {
                auto kb = geometric_kill_bound(fc.gamma, fc.offset, p);
                if (!kb) { out.kind = ShiftOutcome::Kind::Killed; return out; }
                finite_tail = true;
                bound = std::min(bound, *kb);
            }
            break;
        }
        }
    }
    if (out.fam.e_start > bound) { out.kind = ShiftOutcome::Kind::Killed; return out; }
    out.kind = finite_tail ? ShiftOutcome::Kind::FiniteTail : ShiftOutcome::Kind::Symbolic;
    out.tail_bound = bound;
    return out;
}

// e with fam.eval(e) == v and fam.active(e), if any; families vary strictly
// in some coordinate so the index is unique.
std::optional<unsigned> solve_family_index(const Family& fam, const FracVector& v,
                                           std::uint32_t p) {
    std::optional<unsigned> e;
    for (std::size_t i = 0; i < fam.coords.size() && !e; ++i) {
        const FamilyCoord& fc = fam.coords[i];
        if (fc.kind == FamilyCoord::Kind::Arithmetic) {
            // alpha e = -v_i - beta
            FracExponent t = frac_sub(frac_neg(v.c[i]), fc.beta, p);
            if (t.level != 0 || t.num < 0 ||
                t.num % static_cast<long long>(fc.alpha) != 0)
                return std::nullopt;
            e = static_cast<unsigned>(t.num / static_cast<long long>(fc.alpha));
        } else if (fc.kind == FamilyCoord::Kind::Geometric) {
            // gamma / p^e = offset - v_i
            FracExponent d = frac_sub(fc.offset, v.c[i], p);
            if (d.num <= 0) return std::nullopt;
            for (unsigned cand = 0; cand <= d.level + 64; ++cand) {
                FracExponent g = make_frac(static_cast<long long>(fc.gamma), cand, p);
                int c = frac_cmp(g, d, p);
                if (c == 0) { e = cand; break; }
                if (c < 0) break; // g only shrinks from here
            }
            if (!e) return std::nullopt;
        }
    }
    if (!e || !fam.active(*e)) return std::nullopt;
    if (!(fam.eval(*e, p) == v)) return std::nullopt;
    return e;
}

void add_finite(FormalSum& f, const FracVector& v, Coeff c) {
    c %= f.p;
    if (c == 0) return;
    auto it = f.finite.find(v);
    if (it == f.finite.end()) f.finite.emplace(v, c);
    else {
        it->second = (it->second + c) % f.p;
        if (it->second == 0) f.finite.erase(it);
    }
}

bool same_shape(const Family& a, const Family& b) {
    if (a.e_start != b.e_start || a.excluded != b.excluded) return false;
    if (a.coords.size() != b.coords.size()) return false;
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
        const auto& x = a.coords[i];
        const auto& y = b.coords[i];
        if (x.kind != y.kind) return false;
        switch (x.kind) {
        case FamilyCoord::Kind::Constant:
            if (!(x.value == y.value)) return false;
            break;
        case FamilyCoord::Kind::Arithmetic:
            if (x.alpha != y.alpha || !(x.beta == y.beta)) return false;
            break;
        case FamilyCoord::Kind::Geometric:
            if (x.gamma != y.gamma || !(x.offset == y.offset)) return false;
            break;
        }
    }
    return true;
}

// provably disjoint images: some coordinate is constant in both with distinct
// values
bool provably_disjoint(const Family& a, const Family& b) {
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
        if (a.coords[i].kind == FamilyCoord::Kind::Constant &&
            b.coords[i].kind == FamilyCoord::Kind::Constant &&
            !(a.coords[i].value == b.coords[i].value))
            return true;
    }
    return false;
}

} // namespace

ScalarProduct scalar_multiply(const FracPoly& s, const FormalSum& f, unsigned truncation_E) {
    if (s.p != f.p || s.arity != f.arity)
        throw ContextMismatchError("scalar and formal sum over different settings");
    ScalarProduct out;
    out.result = FormalSum(f.p, f.arity);
    FormalSum& r = out.result;
    FracExponent zero{};

    for (const auto& [delta, sc] : s.terms) {
        for (const auto& [v, fc] : f.finite) {
            FracVector w = frac_vec_add(v, delta, f.p);
            bool killed = false;
            for (const auto& x : w.c)
                if (frac_cmp(x, zero, f.p) > 0) { killed = true; break; }
            if (!killed) add_finite(r, w, static_cast<Coeff>((std::uint64_t(sc) * fc) % f.p));
        }
        for (const auto& ft : f.families) {
            Coeff c = static_cast<Coeff>((std::uint64_t(sc) * ft.coeff) % f.p);
            if (c == 0) continue;
            ShiftOutcome sh = shift_family(ft.fam, delta, f.p);
            switch (sh.kind) {
            case ShiftOutcome::Kind::Killed:
                break;
            case ShiftOutcome::Kind::Symbolic:
                r.families.push_back({sh.fam, c});
                break;
            case ShiftOutcome::Kind::FiniteTail: {
                unsigned hi = std::min(sh.tail_bound, truncation_E);
                for (unsigned e = sh.fam.e_start; e <= hi; ++e)
                    if (sh.fam.active(e)) add_finite(r, sh.fam.eval(e, f.p), c);
                if (sh.tail_bound > truncation_E) out.exact = false;
                break;
            }
            }
        }
    }

    if (s.terms.size() <= 1 || r.families.empty()) return out;

    // collision repair between surviving symbolic families and finite terms
    for (auto& ft : r.families) {
        std::vector<FracVector> keys;
        for (const auto& [v, c] : r.finite) keys.push_back(v);
        for (const auto& v : keys) {
            auto e = solve_family_index(ft.fam, v, r.p);
            if (e) {
                add_finite(r, v, ft.coeff); // merge the family element into the point
                ft.fam.excluded.insert(*e);
            }
        }
    }

    // identical families merge exactly; otherwise look for pairwise index
    // collisions within a window and fall back to inexact
    for (std::size_t i = 0; i < r.families.size(); ++i) {
        for (std::size_t j = i + 1; j < r.families.size(); ++j) {
            auto& fi = r.families[i];
            auto& fj = r.families[j];
            if (fi.coeff == 0 || fj.coeff == 0) continue;
            if (same_shape(fi.fam, fj.fam)) {
                fi.coeff = (fi.coeff + fj.coeff) % r.p;
                fj.coeff = 0;
                continue;
            }
            if (provably_disjoint(fi.fam, fj.fam)) continue;
            for (unsigned e = fj.fam.e_start; e <= fj.fam.e_start + 64; ++e) {
                if (!fj.fam.active(e)) continue;
                auto ei = solve_family_index(fi.fam, fj.fam.eval(e, r.p), r.p);
                if (ei) {
                    add_finite(r, fj.fam.eval(e, r.p), (fi.coeff + fj.coeff) % r.p);
                    fi.fam.excluded.insert(*ei);
                    fj.fam.excluded.insert(e);
                }
            }
            // beyond the window the images may still meet
            out.exact = false;
        }
    }
    std::erase_if(r.families, [](const FormalSum::FamilyTerm& ft) { return ft.coeff == 0; });
    return out;
}

// ---- socle pairing ----

namespace {

// valid index range [lo, hi] (hi == nullopt: unbounded) of family elements
// weakly below c; empty signalled by nullopt return
struct BelowRange {
    unsigned lo = 0;
    std::optional<unsigned> hi;
};

std::optional<BelowRange> range_below(const Family& fam, const FracVector& c, std::uint32_t p) {
    BelowRange r;
    r.lo = fam.e_start;
    for (std::size_t i = 0; i < fam.coords.size(); ++i) {
        const FamilyCoord& fc = fam.coords[i];
        switch (fc.kind) {
        case FamilyCoord::Kind::Constant:
            if (frac_cmp(fc.value, c.c[i], p) > 0) return std::nullopt;
            break;
        case FamilyCoord::Kind::Arithmetic: {
            // -(alpha e) - beta <= c_i  <=>  alpha e >= -c_i - beta
            FracExponent t = frac_sub(frac_neg(c.c[i]), fc.beta, p);
            if (t.num > 0) {
                i128 den = i128(fc.alpha) * pow_i128(p, t.level);
                i128 e = (i128(t.num) + den - 1) / den;
                r.lo = std::max<unsigned>(r.lo, static_cast<unsigned>(to_ll(e)));
            }
            break;
        }
        case FamilyCoord::Kind::Geometric: {
            // offset - gamma/p^e <= c_i  <=>  gamma/p^e >= offset - c_i
            FracExponent d = frac_sub(fc.offset, c.c[i], p);
            if (d.num > 0) {
                auto kb = geometric_kill_bound(fc.gamma, d, p);
                if (!kb) return std::nullopt;
                if (!r.hi || *r.hi > *kb) r.hi = *kb;
            }
            break;
        }
        }
    }
    if (r.hi && *r.hi < r.lo) return std::nullopt;
    return r;
}

// some active family element <= c and != c
bool family_goes_below(const Family& fam, const FracVector& c, std::uint32_t p) {
    auto r = range_below(fam, c, p);
    if (!r) return false;
    if (!r->hi) {
        // infinitely many indices below; at most one evaluates to c itself
        unsigned seen = 0;
        for (unsigned e = r->lo; seen < 2; ++e) {
            if (!fam.active(e)) continue;
            if (!(fam.eval(e, p) == c)) return true;
            ++seen;
        }
        return true;
    }
    for (unsigned e = r->lo; e <= *r->hi; ++e)
        if (fam.active(e) && !(fam.eval(e, p) == c)) return true;
    return false;
}

} // namespace

SoclePairing socle_pairing(const FormalSum& f) {
    if (f.is_zero()) throw PreconditionError("socle pairing of the zero element");
    SupportDescription S = f.support();
    DccReport dcc = dcc_check(S);
    if (dcc.verdict != DccVerdict::Pass)
        throw PreconditionError("socle pairing needs a support with verified dcc");

    std::vector<std::pair<FracVector, Coeff>> candidates;
    for (const auto& [v, c] : f.finite) candidates.emplace_back(v, c);
    for (const auto& ft : f.families) {
        unsigned e = ft.fam.e_start;
        while (ft.fam.excluded.count(e)) ++e;
        candidates.emplace_back(ft.fam.eval(e, f.p), ft.coeff);
    }

    for (const auto& [c, coeff] : candidates) {
        bool minimal = true;
        for (const auto& [v, cv] : f.finite)
            if (frac_vec_lt(v, c, f.p)) { minimal = false; break; }
        for (const auto& ft : f.families)
            if (minimal && family_goes_below(ft.fam, c, f.p)) minimal = false;
        if (!minimal) continue;

        SoclePairing pairing;
        pairing.witness_exponent = frac_vec_neg(c);
        pairing.constant = coeff;

        FracPoly s = make_frac_poly(f.p, f.arity, {{pairing.witness_exponent, 1}});
        ScalarProduct prod = scalar_multiply(s, f, 64);
        FracVector origin;
        origin.c.assign(f.arity, FracExponent{});
        bool ok = prod.exact && prod.result.families.empty() &&
                  prod.result.finite.size() == 1 &&
                  prod.result.finite.begin()->first == origin &&
                  prod.result.finite.begin()->second == coeff % f.p;
        if (!ok) throw Error("socle pairing certificate failed to verify");
        return pairing;
    }
    throw Error("no minimal support element found");
}

// ---- nonvanishing witness ----

NonvanishingWitness nonvanishing_witness(unsigned t, unsigned E, std::uint32_t p) {
    if (E < t) throw PreconditionError("truncation below the requested index");
    NonvanishingWitness w;
    FamilyCoord geo;
    geo.kind = FamilyCoord::Kind::Geometric;
    geo.gamma = 1;
    geo.offset = FracExponent{};
    FamilyCoord ari;
    ari.kind = FamilyCoord::Kind::Arithmetic;
    ari.alpha = 1;
    ari.beta = FracExponent{};
    Family fam = make_family({geo, ari}, 0, p);
    w.f = make_formal_sum(p, 2, {}, {{fam, 1}});

    FracVector delta;
    delta.c = {FracExponent{}, FracExponent{static_cast<long long>(t), 0}};
    FracPoly s = make_frac_poly(p, 2, {{delta, 1}});
    ScalarProduct prod = scalar_multiply(s, w.f, E);
    auto terms = enumerate_terms(prod.result, E);

    w.survivor.c = {make_frac(-1, t, p), FracExponent{}};
    if (!terms.count(w.survivor))
        throw Error("expected survivor missing from the truncated product");
    w.survivor_count_at_E = static_cast<unsigned>(terms.size());
    return w;
}

std::map<FracVector, Coeff, FracVecLess> enumerate_terms(const FormalSum& f, unsigned E) {
    std::map<FracVector, Coeff, FracVecLess> out{FracVecLess{f.p}};
    for (const auto& [v, c] : f.finite) out.emplace(v, c);
    for (const auto& ft : f.families) {
        for (unsigned e = ft.fam.e_start; e <= E; ++e) {
            if (!ft.fam.active(e)) continue;
            FracVector v = ft.fam.eval(e, f.p);
            out[v] = (out[v] + ft.coeff) % f.p;
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

// ---- chain violation search ----

namespace {

// links are distinct (a, b) pairs; sums weakly descend
bool extend_chain(const std::vector<FracVector>& A, const std::vector<FracVector>& B,
                  unsigned L, std::uint32_t p, std::vector<ChainLink>& chain,
                  std::vector<bool>& used, const FracVector* prev_sum) {
    if (chain.size() == L) return true;
    for (std::size_t i = 0; i < A.size(); ++i) {
        for (std::size_t j = 0; j < B.size(); ++j) {
            std::size_t slot = i * B.size() + j;
            if (used[slot]) continue;
            FracVector sum = frac_vec_add(A[i], B[j], p);
            if (prev_sum && !frac_vec_leq(sum, *prev_sum, p)) continue;
            chain.emplace_back(A[i], B[j]);
            used[slot] = true;
            if (extend_chain(A, B, L, p, chain, used, &sum)) return true;
            used[slot] = false;
            chain.pop_back();
        }
    }
    return false;
}

} // namespace

std::optional<std::vector<ChainLink>> chain_violation_search(const std::vector<FracVector>& A,
                                                             const std::vector<FracVector>& B,
                                                             unsigned L, std::uint32_t p) {
    if (L == 0 || A.empty() || B.empty()) return std::nullopt;
    std::vector<ChainLink> chain;
    std::vector<bool> used(A.size() * B.size(), false);
    if (extend_chain(A, B, L, p, chain, used, nullptr)) return chain;
    return std::nullopt;
}

// ---- floor factorization ----

FloorFactorization floor_factor(const FracVector& a, unsigned n, unsigned mu,
                                    std::uint32_t p) {
    unsigned c = mu == 0 ? 0 : mu - 1;
    FracExponent zero{};
    FracExponent total{};
    for (const auto& x : a.c) {
        if (frac_cmp(x, zero, p) < 0)
            throw PreconditionError("factorization needs nonnegative exponents");
        total = frac_add(total, x, p);
    }
    FracExponent bound{static_cast<long long>(n) + static_cast<long long>(c), 0};
    if (frac_cmp(total, bound, p) < 0)
        throw PreconditionError("total degree below the factorization threshold");

    FloorFactorization out;
    long long floor_sum = 0;
    out.remainder.c.reserve(a.arity());
    for (const auto& x : a.c) {
        long long fl = frac_floor(x, p);
        out.integer_part.push_back(static_cast<std::uint64_t>(fl));
        out.remainder.c.push_back(frac_sub(x, FracExponent{fl, 0}, p));
        floor_sum += fl;
    }
    // sum of floors >= total - mu + 1 >= n by the arity bound on the
    // fractional parts
    if (a.arity() <= mu && floor_sum < static_cast<long long>(n))
        throw Error("floor factorization fell below the target degree");
    if (floor_sum < static_cast<long long>(n))
        throw PreconditionError("fractional parts exceed the stated bound mu");
    return out;
}

// ---- text form ----

namespace {

struct HullLexer {
    const std::string& s;
    std::size_t i = 0;

    void ws() { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; }
    bool eof() { ws(); return i >= s.size(); }
    char peek() { ws(); return i < s.size() ? s[i] : '\0'; }
    bool take(char c) {
        ws();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    void expect(char c) {
        if (!take(c))
            throw ParseError(std::string("expected '") + c + "'", 1, i + 1);
    }
    long long integer() {
        ws();
        std::size_t start = i;
        if (i < s.size() && s[i] == '-') ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i || (s[start] == '-' && i == start + 1))
            throw ParseError("expected an integer", 1, start + 1);
        return std::stoll(s.substr(start, i - start));
    }
    bool word(const std::string& w) {
        ws();
        if (s.compare(i, w.size(), w) == 0) {
            char next = i + w.size() < s.size() ? s[i + w.size()] : '\0';
            if (!std::isalnum(static_cast<unsigned char>(next))) { i += w.size(); return true; }
        }
        return false;
    }
};

// variable token: x1..xn, or x/y/z for arity <= 3
std::size_t parse_var(HullLexer& lx, std::size_t arity) {
    lx.ws();
    std::size_t at = lx.i;
    if (lx.i >= lx.s.size() || !std::isalpha(static_cast<unsigned char>(lx.s[lx.i])))
        throw ParseError("expected a variable", 1, at + 1);
    char c = lx.s[lx.i];
    ++lx.i;
    if (c == 'x' && lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) {
        std::size_t start = lx.i;
        while (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) ++lx.i;
        std::size_t idx = std::stoul(lx.s.substr(start, lx.i - start));
        if (idx == 0 || idx > arity) throw ParseError("variable index out of range", 1, at + 1);
        return idx - 1;
    }
    std::size_t idx = c == 'x' ? 0 : c == 'y' ? 1 : c == 'z' ? 2 : arity;
    if (idx >= arity) throw ParseError("unknown variable", 1, at + 1);
    return idx;
}

unsigned p_power_level(long long den, std::uint32_t p) {
    unsigned level = 0;
    while (den > 1 && den % static_cast<long long>(p) == 0) {
        den /= static_cast<long long>(p);
        ++level;
    }
    if (den != 1) throw ParseError("denominator is not a power of p", 1, 0);
    return level;
}

// exponent inside a family body; returns a coordinate contribution
FamilyCoord parse_family_exponent(HullLexer& lx, std::uint32_t p) {
    FamilyCoord fc;
    if (!lx.take('(')) {
        long long v = lx.integer();
        fc.kind = FamilyCoord::Kind::Constant;
        fc.value = FracExponent{v, 0};
        return fc;
    }
    bool neg = lx.take('-');
    if (lx.word("e")) {
        // (-e) or (-e/p^k) style not supported; plain (-e)
        fc.kind = FamilyCoord::Kind::Arithmetic;
        fc.alpha = 1;
        fc.beta = FracExponent{};
        if (!neg) throw ParseError("family exponents must be nonpositive", 1, lx.i);
        lx.expect(')');
        return fc;
    }
    if (lx.take('(')) {
        // -( A*e + B )
        long long A = 1;
        if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
            A = lx.integer();
            lx.expect('*');
        }
        if (!lx.word("e")) throw ParseError("expected 'e'", 1, lx.i);
        long long B = 0;
        if (lx.take('+')) B = lx.integer();
        lx.expect(')');
        lx.expect(')');
        if (!neg || A <= 0) throw ParseError("malformed arithmetic exponent", 1, lx.i);
        fc.kind = FamilyCoord::Kind::Arithmetic;
        fc.alpha = static_cast<std::uint64_t>(A);
        fc.beta = FracExponent{B, 0};
        return fc;
    }
    long long num = lx.integer();
    if (lx.take('*')) {
        if (!lx.word("e")) throw ParseError("expected 'e'", 1, lx.i);
        lx.expect(')');
        if (!neg || num <= 0) throw ParseError("malformed arithmetic exponent", 1, lx.i);
        fc.kind = FamilyCoord::Kind::Arithmetic;
        fc.alpha = static_cast<std::uint64_t>(num);
        fc.beta = FracExponent{};
        return fc;
    }
    if (lx.take('/')) {
        if (lx.word("p")) {
            lx.expect('^');
            if (lx.word("e")) {
                lx.expect(')');
                if (!neg || num <= 0)
                    throw ParseError("malformed geometric exponent", 1, lx.i);
                fc.kind = FamilyCoord::Kind::Geometric;
                fc.gamma = static_cast<std::uint64_t>(num);
                fc.offset = FracExponent{};
                return fc;
            }
            long long k = lx.integer();
            lx.expect(')');
            fc.kind = FamilyCoord::Kind::Constant;
            fc.value = make_frac(neg ? -num : num, static_cast<unsigned>(k), p);
            return fc;
        }
        long long den = lx.integer();
        lx.expect(')');
        fc.kind = FamilyCoord::Kind::Constant;
        fc.value = make_frac(neg ? -num : num, p_power_level(den, p), p);
        return fc;
    }
    lx.expect(')');
    fc.kind = FamilyCoord::Kind::Constant;
    fc.value = FracExponent{neg ? -num : num, 0};
    return fc;
}

FracExponent parse_plain_exponent(HullLexer& lx, std::uint32_t p) {
    if (!lx.take('(')) return FracExponent{lx.integer(), 0};
    bool neg = lx.take('-');
    long long num = lx.integer();
    FracExponent out{neg ? -num : num, 0};
    if (lx.take('/')) {
        unsigned level = 0;
        if (lx.word("p")) {
            lx.expect('^');
            level = static_cast<unsigned>(lx.integer());
        } else {
            level = p_power_level(lx.integer(), p);
        }
        out = make_frac(neg ? -num : num, level, p);
    }
    lx.expect(')');
    return out;
}

// product of variable powers into an exponent vector
FracVector parse_plain_monomial(HullLexer& lx, std::size_t arity, std::uint32_t p) {
    FracVector v;
    v.c.assign(arity, FracExponent{});
    while (true) {
        std::size_t idx = parse_var(lx, arity);
        FracExponent ex{1, 0};
        if (lx.take('^')) ex = parse_plain_exponent(lx, p);
        v.c[idx] = frac_add(v.c[idx], ex, p);
        if (!lx.take('*')) break;
        if (!std::isalpha(static_cast<unsigned char>(lx.peek())))
            throw ParseError("expected a variable after '*'", 1, lx.i);
    }
    return v;
}

} // namespace

FormalSum parse_formal_sum(std::uint32_t p, std::size_t arity, const std::string& text) {
    HullLexer lx{text};
    std::vector<std::pair<FracVector, Coeff>> terms;
    std::vector<FormalSum::FamilyTerm> families;
    do {
        long long coeff = 1;
        lx.ws();
        if (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) {
            coeff = lx.integer();
            if (!lx.take('*')) {
                FracVector v;
                v.c.assign(arity, FracExponent{});
                terms.emplace_back(v, static_cast<Coeff>(((coeff % p) + p) % p));
                continue;
            }
        }
        if (lx.word("family")) {
            lx.expect('(');
            if (!lx.word("e")) throw ParseError("expected index variable 'e'", 1, lx.i);
            unsigned e_start = 0;
            if (lx.take('>')) {
                lx.expect('=');
                e_start = static_cast<unsigned>(lx.integer());
            }
            lx.expect(')');
            lx.expect('{');
            std::vector<FamilyCoord> coords(arity);
            while (true) {
                std::size_t idx = parse_var(lx, arity);
                lx.expect('^');
                coords[idx] = parse_family_exponent(lx, p);
                if (!lx.take('*')) break;
            }
            lx.expect('}');
            FormalSum::FamilyTerm ft;
            ft.fam = make_family(std::move(coords), e_start, p);
            ft.coeff = static_cast<Coeff>(((coeff % p) + p) % p);
            families.push_back(std::move(ft));
        } else {
            FracVector v = parse_plain_monomial(lx, arity, p);
            terms.emplace_back(v, static_cast<Coeff>(((coeff % p) + p) % p));
        }
    } while (lx.take('+'));
    if (!lx.eof()) throw ParseError("trailing input", 1, lx.i + 1);
    return make_formal_sum(p, arity, std::move(terms), std::move(families));
}

FracPoly parse_frac_poly(std::uint32_t p, std::size_t arity, const std::string& text) {
    HullLexer lx{text};
    std::vector<std::pair<FracVector, Coeff>> terms;
    do {
        long long coeff = 1;
        lx.ws();
        if (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) {
            coeff = lx.integer();
            if (!lx.take('*')) {
                FracVector v;
                v.c.assign(arity, FracExponent{});
                terms.emplace_back(v, static_cast<Coeff>(((coeff % p) + p) % p));
                continue;
            }
        }
        FracVector v = parse_plain_monomial(lx, arity, p);
        terms.emplace_back(v, static_cast<Coeff>(((coeff % p) + p) % p));
    } while (lx.take('+'));
    if (!lx.eof()) throw ParseError("trailing input", 1, lx.i + 1);
    return make_frac_poly(p, arity, std::move(terms));
}

namespace {

std::string var_name(std::size_t idx, std::size_t arity) {
    if (arity <= 3) {
        const char* names[] = {"x", "y", "z"};
        return names[idx];
    }
    return "x" + std::to_string(idx + 1);
}

std::string coord_text(const FamilyCoord& fc, std::uint32_t p) {
    switch (fc.kind) {
    case FamilyCoord::Kind::Constant:
        return "(" + frac_text(fc.value, p) + ")";
    case FamilyCoord::Kind::Arithmetic:
        if (fc.alpha == 1 && fc.beta.is_zero()) return "(-e)";
        if (fc.beta.is_zero()) return "(-" + std::to_string(fc.alpha) + "*e)";
        return "(-(" + std::to_string(fc.alpha) + "*e+" + frac_text(fc.beta, p) + "))";
    case FamilyCoord::Kind::Geometric:
        if (fc.offset.is_zero()) return "(-" + std::to_string(fc.gamma) + "/p^e)";
        return "(" + frac_text(fc.offset, p) + "-" + std::to_string(fc.gamma) + "/p^e)";
    }
    return "";
}

} // namespace

std::string print_formal_sum(const FormalSum& f) {
    if (f.is_zero()) return "0";
    std::string out;
    auto sep = [&] { if (!out.empty()) out += " + "; };
    for (const auto& [v, c] : f.finite) {
        sep();
        std::string mono;
        for (std::size_t i = 0; i < v.arity(); ++i) {
            if (v.c[i].is_zero()) continue;
            if (!mono.empty()) mono += "*";
            mono += var_name(i, f.arity) + "^(" + frac_text(v.c[i], f.p) + ")";
        }
        if (mono.empty()) out += std::to_string(c);
        else if (c == 1) out += mono;
        else out += std::to_string(c) + "*" + mono;
    }
    for (const auto& ft : f.families) {
        sep();
        std::string head = "family(e";
        if (ft.fam.e_start > 0) head += ">=" + std::to_string(ft.fam.e_start);
        head += "){";
        std::string body;
        for (std::size_t i = 0; i < ft.fam.coords.size(); ++i) {
            const auto& fc = ft.fam.coords[i];
            if (fc.kind == FamilyCoord::Kind::Constant && fc.value.is_zero()) continue;
            if (!body.empty()) body += "*";
            body += var_name(i, f.arity) + "^" + coord_text(fc, f.p);
        }
        if (body.empty()) body = "1";
        std::string term = head + body + "}";
        if (ft.coeff != 1) term = std::to_string(ft.coeff) + "*" + term;
        out += term;
    }
    return out;
}

} // namespace tckit
