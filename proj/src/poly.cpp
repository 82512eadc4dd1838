#include "tckit/poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>

namespace tckit {

// ---- field helpers ----

Coeff finv(Coeff a, std::uint32_t p) {
    if (a == 0) throw Error("division by zero in F_p");
    // Fermat: a^(p-2) mod p.
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e) {
        if (e & 1) result = (result * base) % p;
        base = (base * base) % p;
        e >>= 1;
    }
    return Coeff(result);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Exp checked_pow(std::uint64_t base, unsigned e) {
    Exp r = 1;
    for (unsigned i = 0; i < e; ++i) r = checked_mul(r, base);
    return r;
}

Exp checked_mul(Exp a, Exp b) {
    Exp r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("exponent overflow in multiply");
    // Keep headroom so degree sums stay representable.
    if (r > (Exp(1) << 62)) throw OverflowError("exponent too large");
    return r;
}

Exp checked_add(Exp a, Exp b) {
    Exp r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("exponent overflow in add");
    return r;
}

// ---- monomials ----

Exp Monomial::total_degree() const {
    Exp d = 0;
    for (Exp x : e) d = checked_add(d, x);
    return d;
}

bool Monomial::is_one() const {
    return std::all_of(e.begin(), e.end(), [](Exp x) { return x == 0; });
}

bool Monomial::divides(const Monomial& m) const {
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > m.e[i]) return false;
    return true;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = checked_add(r.e[i], b.e[i]);
    return r;
}

Monomial mono_div(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i) {
        if (b.e[i] > a.e[i]) throw Error("monomial division not exact");
        r.e[i] = a.e[i] - b.e[i];
    }
    return r;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::max(a.e[i], b.e[i]);
    return r;
}

Monomial mono_pow(const Monomial& a, Exp k) {
    Monomial r = a;
    for (auto& x : r.e) x = checked_mul(x, k);
    return r;
}

int grevlex_cmp(const Monomial& a, const Monomial& b) {
    Exp da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db ? 1 : -1;
    // Equal degree: a > b iff the last differing exponent is smaller in a.
    for (std::size_t i = a.e.size(); i-- > 0;) {
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    }
    return 0;
}

// ---- term orders ----

int TermOrder::compare(const Monomial& a, const Monomial& b) const {
    auto var = [&](std::size_t k) { return perm.empty() ? k : perm[k]; };
    std::size_t n = a.arity();
    switch (kind) {
        case Kind::Lex: {
            for (std::size_t k = 0; k < n; ++k) {
                Exp xa = a.e[var(k)], xb = b.e[var(k)];
                if (xa != xb) return xa > xb ? 1 : -1;
            }
            return 0;
        }
        case Kind::GradedLex: {
            Exp da = a.total_degree(), db = b.total_degree();
            if (da != db) return da > db ? 1 : -1;
            for (std::size_t k = 0; k < n; ++k) {
                Exp xa = a.e[var(k)], xb = b.e[var(k)];
                if (xa != xb) return xa > xb ? 1 : -1;
            }
            return 0;
        }
        case Kind::Grevlex:
        default: {
            Exp da = a.total_degree(), db = b.total_degree();
            if (da != db) return da > db ? 1 : -1;
            for (std::size_t k = n; k-- > 0;) {
                Exp xa = a.e[var(k)], xb = b.e[var(k)];
                if (xa != xb) return xa < xb ? 1 : -1;
            }
            return 0;
        }
    }
}

std::string TermOrder::text() const {
    std::string s;
    switch (kind) {
        case Kind::Grevlex: s = "grevlex"; break;
        case Kind::Lex: s = "lex"; break;
        case Kind::GradedLex: s = "gradedlex"; break;
    }
    if (!perm.empty()) {
        s += "[";
        for (std::size_t i = 0; i < perm.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(perm[i]);
        }
        s += "]";
    }
    return s;
}

TermOrder TermOrder::parse(const std::string& name) {
    TermOrder o;
    if (name == "grevlex" || name.empty()) o.kind = Kind::Grevlex;
    else if (name == "lex") o.kind = Kind::Lex;
    else if (name == "gradedlex" || name == "graded-lex") o.kind = Kind::GradedLex;
    else throw Error("unknown term order: " + name);
    return o;
}

// ---- polynomials ----

Polynomial Polynomial::constant(std::size_t arity, Coeff c, std::uint32_t p) {
    c = Coeff(c % p);
    if (c == 0) return zero(arity);
    return Polynomial(arity, {Term{Monomial::one(arity), c}});
}

Polynomial Polynomial::variable(std::size_t arity, std::size_t i) {
    Monomial m = Monomial::one(arity);
    m.e[i] = 1;
    return Polynomial(arity, {Term{std::move(m), 1}});
}

Polynomial Polynomial::make(std::size_t arity, std::vector<Term> terms, std::uint32_t p) {
    for (auto& t : terms) {
        if (t.m.arity() != arity) throw ContextMismatchError("term arity mismatch");
        t.c = Coeff(t.c % p);
    }
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return grevlex_cmp(a.m, b.m) > 0; });
    std::vector<Term> out;
    for (auto& t : terms) {
        if (!out.empty() && out.back().m == t.m) {
            out.back().c = fadd(out.back().c, t.c, p);
        } else {
            out.push_back(std::move(t));
        }
    }
    std::erase_if(out, [](const Term& t) { return t.c == 0; });
    return Polynomial(arity, std::move(out));
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one());
}

const Term& Polynomial::leading(const TermOrder& order) const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    const Term* best = &terms_[0];
    for (const Term& t : terms_)
        if (order.compare(t.m, best->m) > 0) best = &t;
    return *best;
}

Polynomial poly_add(const Polynomial& f, const Polynomial& g, std::uint32_t p) {
    if (f.arity() != g.arity()) throw ContextMismatchError("arity mismatch in add");
    std::vector<Term> out;
    out.reserve(f.terms().size() + g.terms().size());
    std::size_t i = 0, j = 0;
    const auto& A = f.terms();
    const auto& B = g.terms();
    while (i < A.size() && j < B.size()) {
        int c = grevlex_cmp(A[i].m, B[j].m);
        if (c > 0) out.push_back(A[i++]);
        else if (c < 0) out.push_back(B[j++]);
        else {
            Coeff s = fadd(A[i].c, B[j].c, p);
            if (s != 0) out.push_back(Term{A[i].m, s});
            ++i, ++j;
        }
    }
    while (i < A.size()) out.push_back(A[i++]);
    while (j < B.size()) out.push_back(B[j++]);
    return Polynomial::make(f.arity(), std::move(out), p);
}

Polynomial poly_neg(const Polynomial& f, std::uint32_t p) {
    std::vector<Term> out = f.terms();
    for (auto& t : out) t.c = fneg(t.c, p);
    return Polynomial::make(f.arity(), std::move(out), p);
}

Polynomial poly_sub(const Polynomial& f, const Polynomial& g, std::uint32_t p) {
    return poly_add(f, poly_neg(g, p), p);
}

Polynomial poly_scale(const Polynomial& f, Coeff c, std::uint32_t p) {
    std::vector<Term> out = f.terms();
    for (auto& t : out) t.c = fmul(t.c, c, p);
    return Polynomial::make(f.arity(), std::move(out), p);
}

Polynomial poly_mul_term(const Polynomial& f, const Term& t, std::uint32_t p) {
    std::vector<Term> out;
    out.reserve(f.terms().size());
    for (const Term& s : f.terms()) out.push_back(Term{mono_mul(s.m, t.m), fmul(s.c, t.c, p)});
    return Polynomial::make(f.arity(), std::move(out), p);
}

Polynomial poly_mul(const Polynomial& f, const Polynomial& g, std::uint32_t p) {
    if (f.arity() != g.arity()) throw ContextMismatchError("arity mismatch in multiply");
    Polynomial acc = Polynomial::zero(f.arity());
    for (const Term& t : g.terms()) acc = poly_add(acc, poly_mul_term(f, t, p), p);
    return acc;
}

Polynomial poly_pow(const Polynomial& f, Exp k, std::uint32_t p) {
    Polynomial r = Polynomial::constant(f.arity(), 1, p);
    Polynomial base = f;
    while (k) {
        if (k & 1) r = poly_mul(r, base, p);
        k >>= 1;
        if (k) base = poly_mul(base, base, p);
    }
    return r;
}

// ---- ring context ----

bool RingContext::standard_graded() const {
    return std::all_of(weights.begin(), weights.end(), [](std::uint32_t w) { return w == 1; });
}

Exp weighted_degree(const RingContext& ctx, const Monomial& m) {
    Exp d = 0;
    for (std::size_t i = 0; i < m.e.size(); ++i)
        d = checked_add(d, checked_mul(m.e[i], ctx.weights[i]));
    return d;
}

void RingContext::validate() const {
    if (!is_prime(p)) throw Error("p must be prime");
    if (names.empty()) throw Error("at least one variable required");
    if (weights.size() != names.size()) throw Error("weights/names length mismatch");
    for (auto w : weights)
        if (w < 1) throw Error("weights must be positive");
    for (const auto& r : relations) {
        if (r.arity() != arity()) throw ContextMismatchError("relation arity mismatch");
        DegreeInfo d = degree_check(*this, r);
        if (!d.zero && !d.homogeneous)
            throw Error("inhomogeneous quotient relation: " + print_polynomial(*this, r));
    }
}

std::string RingContext::digest() const {
    std::ostringstream os;
    os << "p=" << p << ";vars=";
    for (const auto& n : names) os << n << ",";
    os << ";w=";
    for (auto w : weights) os << w << ",";
    os << ";rel=";
    for (const auto& r : relations) os << print_polynomial(*this, r) << ";";
    return fnv_digest(os.str());
}

RingContext make_context(std::uint32_t p, std::vector<std::string> names,
                         std::vector<std::uint32_t> weights, std::vector<Polynomial> relations) {
    RingContext ctx;
    ctx.p = p;
    ctx.names = std::move(names);
    ctx.weights = weights.empty() ? std::vector<std::uint32_t>(ctx.names.size(), 1)
                                  : std::move(weights);
    ctx.relations = std::move(relations);
    ctx.validate();
    return ctx;
}

// ---- spec-level operations ----

Polynomial multiply(const RingContext& ctx, const Polynomial& f, const Polynomial& g) {
    if (f.arity() != ctx.arity() || g.arity() != ctx.arity())
        throw ContextMismatchError("polynomial does not belong to this ring");
    return poly_mul(f, g, ctx.p);
}

Polynomial frobenius_power_poly(const RingContext& ctx, const Polynomial& f, unsigned e) {
    if (f.arity() != ctx.arity()) throw ContextMismatchError("polynomial does not belong to this ring");
    if (e == 0) return f;
    Exp q = checked_pow(ctx.p, e);
    std::vector<Term> out;
    out.reserve(f.terms().size());
    for (const Term& t : f.terms()) out.push_back(Term{mono_pow(t.m, q), t.c});
    return Polynomial::make(f.arity(), std::move(out), ctx.p);
}

DegreeInfo degree_check(const RingContext& ctx, const Polynomial& f) {
    DegreeInfo info;
    if (f.is_zero()) {
        info.zero = true;
        return info;
    }
    Exp maxd = 0;
    bool first = true;
    for (const Term& t : f.terms()) {
        Exp d = weighted_degree(ctx, t.m);
        if (first) {
            maxd = d;
            first = false;
        } else {
            if (d != maxd) info.homogeneous = false;
            maxd = std::max(maxd, d);
        }
    }
    info.degree = maxd;
    return info;
}

// ---- parsing / printing ----

namespace {

struct Lexer {
    const std::string& s;
    std::size_t pos = 0;
    int line = 1, col = 1;

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) advance();
    }
    char peek() const { return pos < s.size() ? s[pos] : '\0'; }
    void advance() {
        if (s[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
};

// Decompose a word like "xy" into declared variable indices, longest prefix first.
std::vector<std::size_t> decompose_word(const RingContext& ctx, const std::string& word,
                                        int line, int col) {
    std::vector<std::size_t> vars;
    std::size_t i = 0;
    while (i < word.size()) {
        std::size_t best = std::string::npos, best_len = 0;
        for (std::size_t v = 0; v < ctx.names.size(); ++v) {
            const std::string& n = ctx.names[v];
            if (n.size() > best_len && word.compare(i, n.size(), n) == 0) {
                best = v;
                best_len = n.size();
            }
        }
        if (best == std::string::npos)
            throw ParseError("unknown variable in '" + word + "'", line, col);
        vars.push_back(best);
        i += best_len;
    }
    return vars;
}

} // namespace

Polynomial parse_polynomial(const RingContext& ctx, const std::string& text) {
    Lexer lx{text};
    std::vector<Term> terms;
    std::uint32_t p = ctx.p;
    std::size_t n = ctx.arity();

    bool expect_term = true;
    long long sign = 1;
    lx.skip_ws();
    if (lx.peek() == '\0') throw ParseError("empty polynomial", lx.line, lx.col);

    while (true) {
        lx.skip_ws();
        char c = lx.peek();
        if (c == '\0') {
            if (expect_term) throw ParseError("trailing operator", lx.line, lx.col);
            break;
        }
        if (c == '+' || c == '-') {
            if (expect_term && c == '-') { // unary minus
                sign = -sign;
                lx.advance();
                continue;
            }
            if (expect_term) throw ParseError("unexpected '+'", lx.line, lx.col);
            sign = (c == '-') ? -1 : 1;
            lx.advance();
            expect_term = true;
            continue;
        }
        if (!expect_term) throw ParseError("expected '+' or '-'", lx.line, lx.col);

        // one term: [int] factors, '*' optional
        long long coeff_int = 1;
        Monomial m = Monomial::one(n);
        bool saw_factor = false;
        while (true) {
            lx.skip_ws();
            char f = lx.peek();
            if (std::isdigit((unsigned char)f)) {
                long long v = 0;
                int tl = lx.line, tc = lx.col;
                while (std::isdigit((unsigned char)lx.peek())) {
                    v = v * 10 + (lx.peek() - '0');
                    if (v > (1LL << 40)) throw ParseError("coefficient too large", tl, tc);
                    lx.advance();
                }
                coeff_int = coeff_int * (v % p) % p;
                saw_factor = true;
            } else if (std::isalpha((unsigned char)f) || f == '_') {
                int tl = lx.line, tc = lx.col;
                std::string word;
                while (std::isalnum((unsigned char)lx.peek()) || lx.peek() == '_') {
                    word += lx.peek();
                    lx.advance();
                }
                auto vars = decompose_word(ctx, word, tl, tc);
                Exp expn = 1;
                lx.skip_ws();
                if (lx.peek() == '^') {
                    lx.advance();
                    lx.skip_ws();
                    if (!std::isdigit((unsigned char)lx.peek()))
                        throw ParseError("expected exponent", lx.line, lx.col);
                    Exp v = 0;
                    while (std::isdigit((unsigned char)lx.peek())) {
                        v = checked_add(checked_mul(v, 10), Exp(lx.peek() - '0'));
                        lx.advance();
                    }
                    expn = v;
                }
                // ^ binds to the last variable of the word: "xy^2" = x*y^2
                for (std::size_t k = 0; k < vars.size(); ++k) {
                    Exp add = (k + 1 == vars.size()) ? expn : 1;
                    m.e[vars[k]] = checked_add(m.e[vars[k]], add);
                }
                saw_factor = true;
            } else {
                break;
            }
            lx.skip_ws();
            if (lx.peek() == '*') lx.advance();
        }
        if (!saw_factor) throw ParseError("expected a term", lx.line, lx.col);
        long long cc = ((coeff_int % p) + p) % p;
        Coeff cmod = Coeff(sign > 0 ? cc : (cc == 0 ? 0 : p - cc));
        terms.push_back(Term{std::move(m), cmod});
        sign = 1;
        expect_term = false;
    }
    return Polynomial::make(n, std::move(terms), p);
}

std::string print_monomial(const RingContext& ctx, const Monomial& m) {
    std::string s;
    for (std::size_t i = 0; i < m.e.size(); ++i) {
        if (m.e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += ctx.names[i];
        if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
    }
    return s.empty() ? "1" : s;
}

std::string print_polynomial(const RingContext& ctx, const Polynomial& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (const Term& t : f.terms()) {
        if (!s.empty()) s += " + ";
        std::string mono = print_monomial(ctx, t.m);
        if (t.c != 1 || mono == "1") {
            s += std::to_string(t.c);
            if (mono != "1") s += "*" + mono;
        } else {
            s += mono;
        }
    }
    return s;
}

std::string fnv_digest(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return std::string(buf);
}

} // namespace tckit
