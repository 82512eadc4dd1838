#include "tckit/newton.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

namespace tckit {

namespace {

using I128 = __int128;

std::vector<ExpVec> minimalize(std::vector<ExpVec> vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    std::vector<ExpVec> out;
    for (const auto& v : vs) {
        bool redundant = false;
        for (const auto& w : vs)
            if (w != v && dominates(v, w)) {
                redundant = true;
                break;
            }
        if (!redundant) out.push_back(v);
    }
    return out;
}

// Facet inequalities w.x >= b of conv(gens) + R^n_{>=0}; w integral, w >= 0.
struct Facet {
    std::vector<long long> w;
    long long b;
};

long long det_bareiss(std::vector<std::vector<I128>> m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    I128 prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * (long long)m[n - 1][n - 1];
}

// Normal of the hyperplane spanned by the rows (generalized cross product);
// zero vector when the rows are dependent.
std::vector<long long> hyperplane_normal(const std::vector<std::vector<long long>>& rows,
                                         std::size_t n) {
    std::vector<long long> w(n, 0);
    for (std::size_t drop = 0; drop < n; ++drop) {
        std::vector<std::vector<I128>> minor;
        for (const auto& r : rows) {
            std::vector<I128> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != drop) row.push_back(r[j]);
            minor.push_back(std::move(row));
        }
        long long d = det_bareiss(std::move(minor));
        w[drop] = (drop % 2 == 0) ? d : -d;
    }
    return w;
}

std::vector<Facet> newton_facets(const MonomialIdeal& I) {
    std::size_t n = I.arity;
    const auto& V = I.gens;
    std::vector<Facet> facets;
    std::set<std::vector<long long>> seen;

    auto consider = [&](std::vector<long long> w) {
        bool nonzero = false, nonneg = true, nonpos = true;
        for (long long x : w) {
            if (x != 0) nonzero = true;
            if (x < 0) nonneg = false;
            if (x > 0) nonpos = false;
        }
        if (!nonzero) return;
        if (!nonneg && nonpos)
            for (auto& x : w) x = -x;
        else if (!nonneg)
            return;
        long long g = 0;
        for (long long x : w) g = std::gcd(g, x);
        for (auto& x : w) x /= g;
        if (!seen.insert(w).second) return;
        I128 b = 0;
        bool first = true;
        for (const auto& v : V) {
            I128 dot = 0;
            for (std::size_t i = 0; i < n; ++i) dot += I128(w[i]) * (long long)v[i];
            if (first || dot < b) b = dot;
            first = false;
        }
        facets.push_back(Facet{std::move(w), (long long)b});
    };

    if (n == 1) {
        consider({1});
        return facets;
    }

    // A facet's hyperplane is spanned by k generator points and n-k coordinate
    // directions, (k-1) + (n-k) = n-1 spanning rows.
    std::vector<std::size_t> pts;
    auto choose_axes = [&](auto&& self, std::size_t start, std::size_t need,
                           std::vector<std::size_t>& axes) -> void {
        if (need == 0) {
            std::vector<std::vector<long long>> rows;
            for (std::size_t t = 1; t < pts.size(); ++t) {
                std::vector<long long> r(n);
                for (std::size_t j = 0; j < n; ++j)
                    r[j] = (long long)V[pts[t]][j] - (long long)V[pts[0]][j];
                rows.push_back(std::move(r));
            }
            for (std::size_t ax : axes) {
                std::vector<long long> r(n, 0);
                r[ax] = 1;
                rows.push_back(std::move(r));
            }
            consider(hyperplane_normal(rows, n));
            return;
        }
        for (std::size_t a = start; a < n; ++a) {
            axes.push_back(a);
            self(self, a + 1, need - 1, axes);
            axes.pop_back();
        }
    };
    auto choose_pts = [&](auto&& self, std::size_t start, std::size_t need) -> void {
        if (need == 0) {
            std::vector<std::size_t> axes;
            choose_axes(choose_axes, 0, n - pts.size(), axes);
            return;
        }
        for (std::size_t i = start; i < V.size(); ++i) {
            pts.push_back(i);
            self(self, i + 1, need - 1);
            pts.pop_back();
        }
    };
    for (std::size_t k = 1; k <= std::min(n, V.size()); ++k) choose_pts(choose_pts, 0, k);
    return facets;
}

} // namespace

bool dominates(const ExpVec& a, const ExpVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i]) return false;
    return true;
}

MonomialIdeal make_monomial_ideal(std::size_t arity, std::vector<ExpVec> exponents) {
    if (exponents.empty()) throw PreconditionError("monomial ideal needs at least one generator");
    for (const auto& v : exponents)
        if (v.size() != arity) throw ContextMismatchError("exponent vector arity mismatch");
    MonomialIdeal I;
    I.arity = arity;
    I.gens = minimalize(std::move(exponents));
    return I;
}

bool monomial_membership(const ExpVec& a, const MonomialIdeal& I) {
    for (const auto& g : I.gens)
        if (dominates(a, g)) return true;
    return false;
}

bool closure_membership(const ExpVec& a, const MonomialIdeal& I) {
    if (a.size() != I.arity) throw ContextMismatchError("exponent vector arity mismatch");
    // Exact test against the (cached-per-call) facet inequalities.
    for (const Facet& f : newton_facets(I)) {
        I128 dot = 0;
        for (std::size_t i = 0; i < a.size(); ++i) dot += I128(f.w[i]) * (long long)a[i];
        if (dot < f.b) return false;
    }
    return true;
}

MonomialIdeal integral_closure_generators(const MonomialIdeal& I) {
    std::size_t n = I.arity;
    std::vector<Facet> facets = newton_facets(I);
    auto member = [&](const ExpVec& a) {
        for (const Facet& f : facets) {
            I128 dot = 0;
            for (std::size_t i = 0; i < n; ++i) dot += I128(f.w[i]) * (long long)a[i];
            if (dot < f.b) return false;
        }
        return true;
    };
    ExpVec box(n, 0);
    for (const auto& g : I.gens)
        for (std::size_t i = 0; i < n; ++i) box[i] = std::max(box[i], g[i]);

    std::vector<ExpVec> out;
    ExpVec a(n, 0);
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == n) {
            if (!member(a)) return;
            // minimal generator iff every coordinate step down leaves the closure
            for (std::size_t j = 0; j < n; ++j) {
                if (a[j] == 0) continue;
                ExpVec b = a;
                b[j] -= 1;
                if (member(b)) return;
            }
            out.push_back(a);
            return;
        }
        for (std::uint64_t x = 0; x <= box[i]; ++x) {
            a[i] = x;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return make_monomial_ideal(n, std::move(out));
}

MonomialIdeal monomial_power(const MonomialIdeal& I, unsigned m) {
    if (m == 0) return make_monomial_ideal(I.arity, {ExpVec(I.arity, 0)});
    std::vector<ExpVec> acc = I.gens;
    for (unsigned t = 1; t < m; ++t) {
        std::vector<ExpVec> next;
        for (const auto& a : acc)
            for (const auto& g : I.gens) {
                ExpVec s(I.arity);
                for (std::size_t i = 0; i < I.arity; ++i) s[i] = a[i] + g[i];
                next.push_back(std::move(s));
            }
        acc = minimalize(std::move(next));
    }
    return make_monomial_ideal(I.arity, std::move(acc));
}

BriansconSkodaReport briancon_skoda_check(const MonomialIdeal& I, unsigned k) {
    BriansconSkodaReport report;
    report.d = unsigned(I.generator_count());
    report.k = k;
    MonomialIdeal big = monomial_power(I, report.d + k);
    MonomialIdeal target = monomial_power(I, k + 1);
    MonomialIdeal closure = integral_closure_generators(big);
    for (const auto& g : closure.gens) {
        if (!monomial_membership(g, target)) {
            report.pass = false;
            report.counterexample = g;
            return report;
        }
    }
    report.pass = true;
    return report;
}

// ---- text form ----

namespace {

std::string var_name(std::size_t i, std::size_t arity) {
    static const char* letters[] = {"x", "y", "z"};
    if (arity <= 3) return letters[i];
    return "x" + std::to_string(i + 1);
}

} // namespace

MonomialIdeal parse_monomial_ideal(const std::string& text) {
    // `(x^2*y, y^3)`; variables x,y,z or x1,x2,...
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
    };
    skip();
    bool parens = pos < text.size() && text[pos] == '(';
    if (parens) ++pos;
    std::vector<std::map<std::size_t, std::uint64_t>> raw;
    std::size_t max_var = 0;
    raw.emplace_back();
    while (true) {
        skip();
        if (pos >= text.size()) break;
        char c = text[pos];
        if (c == ')') {
            ++pos;
            break;
        }
        if (c == ',') {
            raw.emplace_back();
            ++pos;
            continue;
        }
        if (c == '*') {
            ++pos;
            continue;
        }
        if (c == '1') {
            ++pos;
            continue;
        }
        if (!std::isalpha((unsigned char)c)) throw ParseError("bad monomial ideal syntax");
        std::size_t var;
        if (c == 'x' && pos + 1 < text.size() && std::isdigit((unsigned char)text[pos + 1])) {
            ++pos;
            std::size_t idx = 0;
            while (pos < text.size() && std::isdigit((unsigned char)text[pos]))
                idx = idx * 10 + (text[pos++] - '0');
            if (idx == 0) throw ParseError("variable indices start at 1");
            var = idx - 1;
        } else {
            if (c == 'x') var = 0;
            else if (c == 'y') var = 1;
            else if (c == 'z') var = 2;
            else throw ParseError(std::string("unknown variable '") + c + "'");
            ++pos;
        }
        std::uint64_t e = 1;
        skip();
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            skip();
            if (pos >= text.size() || !std::isdigit((unsigned char)text[pos]))
                throw ParseError("expected exponent");
            e = 0;
            while (pos < text.size() && std::isdigit((unsigned char)text[pos]))
                e = e * 10 + (text[pos++] - '0');
        }
        raw.back()[var] += e;
        max_var = std::max(max_var, var + 1);
    }
    if (max_var == 0) throw ParseError("no variables in monomial ideal");
    std::vector<ExpVec> gens;
    for (const auto& mono : raw) {
        ExpVec v(max_var, 0);
        for (auto [var, e] : mono) v[var] = e;
        gens.push_back(std::move(v));
    }
    return make_monomial_ideal(max_var, std::move(gens));
}

std::string print_monomial_ideal(const MonomialIdeal& I) {
    std::string s = "(";
    for (std::size_t g = 0; g < I.gens.size(); ++g) {
        if (g) s += ", ";
        std::string m;
        for (std::size_t i = 0; i < I.arity; ++i) {
            if (I.gens[g][i] == 0) continue;
            if (!m.empty()) m += "*";
            m += var_name(i, I.arity);
            if (I.gens[g][i] > 1) m += "^" + std::to_string(I.gens[g][i]);
        }
        s += m.empty() ? "1" : m;
    }
    return s + ")";
}

} // namespace tckit
