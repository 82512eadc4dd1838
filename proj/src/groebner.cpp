#include "tckit/groebner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>

namespace tckit {

IdealSpec make_ideal(const RingContext& ctx, std::vector<Polynomial> gens) {
    for (const auto& g : gens) {
        if (g.arity() != ctx.arity()) throw ContextMismatchError("generator arity mismatch");
        if (g.is_zero()) throw Error("ideal generators must be nonzero");
    }
    return IdealSpec{ctx, std::move(gens)};
}

IdealSpec make_ideal(const RingContext& ctx, const std::vector<std::string>& gens) {
    std::vector<Polynomial> polys;
    polys.reserve(gens.size());
    for (const auto& s : gens) polys.push_back(parse_polynomial(ctx, s));
    return make_ideal(ctx, std::move(polys));
}

std::string IdealSpec::digest() const {
    std::ostringstream os;
    os << ctx.digest() << "|";
    for (const auto& g : gens) os << print_polynomial(ctx, g) << ";";
    return fnv_digest(os.str());
}

// ---- division ----

Division poly_divide(const RingContext& ctx, const Polynomial& f,
                     const std::vector<Polynomial>& divisors, const TermOrder& order) {
    std::uint32_t p = ctx.p;
    Division d;
    d.quotients.assign(divisors.size(), Polynomial::zero(ctx.arity()));

    // leading term plus tail (everything else) of each divisor under `order`
    std::vector<Term> lts;
    std::vector<std::vector<Term>> tails;
    lts.reserve(divisors.size());
    tails.reserve(divisors.size());
    for (const auto& g : divisors) {
        const Term& lt = g.leading(order);
        lts.push_back(lt);
        std::vector<Term> tail;
        for (const auto& t : g.terms())
            if (!(t.m == lt.m)) tail.push_back(t);
        tails.push_back(std::move(tail));
    }

    // working terms keyed descending under `order`; no zero coefficients
    auto desc = [&order](const Monomial& a, const Monomial& b) {
        return order.compare(a, b) > 0;
    };
    std::map<Monomial, Coeff, decltype(desc)> acc(desc);
    for (const auto& t : f.terms()) acc.emplace(t.m, t.c);

    std::vector<std::vector<Term>> quot(divisors.size());
    std::vector<Term> rem;
    while (!acc.empty()) {
        auto it = acc.begin();
        Term t{it->first, it->second};
        acc.erase(it);
        std::size_t j = 0;
        bool reducible = false;
        for (; j < lts.size(); ++j)
            if (lts[j].m.divides(t.m)) {
                reducible = true;
                break;
            }
        if (!reducible) {
            rem.push_back(std::move(t));
            continue;
        }
        Term factor{mono_div(t.m, lts[j].m), fmul(t.c, finv(lts[j].c, p), p)};
        for (const auto& s : tails[j]) {
            Monomial m = mono_mul(s.m, factor.m);
            Coeff c = fmul(s.c, factor.c, p);
            auto [pos, fresh] = acc.emplace(m, fneg(c, p));
            if (!fresh) {
                pos->second = fsub(pos->second, c, p);
                if (pos->second == 0) acc.erase(pos);
            }
        }
        quot[j].push_back(std::move(factor));
    }
    for (std::size_t j = 0; j < divisors.size(); ++j)
        d.quotients[j] = Polynomial::make(ctx.arity(), std::move(quot[j]), p);
    d.remainder = Polynomial::make(ctx.arity(), std::move(rem), p);
    return d;
}

Polynomial normal_form(const RingContext& ctx, const Polynomial& f, const GroebnerBasis& G) {
    if (f.arity() != ctx.arity()) throw ContextMismatchError("polynomial/ring mismatch");
    if (G.basis.empty()) return f;
    return poly_divide(ctx, f, G.basis, G.order).remainder;
}

// ---- Buchberger ----

namespace {

struct WorkPoly {
    Polynomial f;
    Term lt;
    std::vector<Polynomial> repr; // over the input list, when tracking
};

struct Pair {
    std::size_t i, j;
    Monomial lcm;
};

GroebnerBasis buchberger_core(const RingContext& ctx, const std::vector<Polynomial>& input,
                              const TermOrder& order, bool track) {
    std::uint32_t p = ctx.p;
    std::size_t n_in = input.size();
    std::vector<WorkPoly> G;

    auto make_repr_unit = [&](std::size_t j) {
        std::vector<Polynomial> r(n_in, Polynomial::zero(ctx.arity()));
        r[j] = Polynomial::constant(ctx.arity(), 1, p);
        return r;
    };

    auto reduce_full = [&](Polynomial f, std::vector<Polynomial> repr)
        -> std::pair<Polynomial, std::vector<Polynomial>> {
        std::vector<Polynomial> divisors;
        divisors.reserve(G.size());
        for (const auto& g : G) divisors.push_back(g.f);
        if (divisors.empty()) return {std::move(f), std::move(repr)};
        Division d = poly_divide(ctx, f, divisors, order);
        if (track) {
            for (std::size_t k = 0; k < G.size(); ++k) {
                if (d.quotients[k].is_zero()) continue;
                for (std::size_t j = 0; j < n_in; ++j) {
                    Polynomial delta = poly_mul(d.quotients[k], G[k].repr[j], p);
                    repr[j] = poly_sub(repr[j], delta, p);
                }
            }
        }
        return {std::move(d.remainder), std::move(repr)};
    };

    std::vector<Pair> pairs;
    auto add_poly = [&](Polynomial f, std::vector<Polynomial> repr) {
        // make monic
        Coeff lc = f.leading(order).c;
        if (lc != 1) {
            Coeff inv = finv(lc, p);
            f = poly_scale(f, inv, p);
            if (track)
                for (auto& r : repr) r = poly_scale(r, inv, p);
        }
        std::size_t idx = G.size();
        Term lt = f.leading(order);
        for (std::size_t i = 0; i < idx; ++i)
            pairs.push_back(Pair{i, idx, mono_lcm(G[i].lt.m, lt.m)});
        G.push_back(WorkPoly{std::move(f), lt, std::move(repr)});
    };

    for (std::size_t j = 0; j < n_in; ++j) {
        auto repr = track ? make_repr_unit(j) : std::vector<Polynomial>{};
        auto [r, rr] = reduce_full(input[j], std::move(repr));
        if (!r.is_zero()) add_poly(std::move(r), std::move(rr));
    }

    while (!pairs.empty()) {
        // normal selection: minimal lcm under the order
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs.size(); ++k)
            if (order.compare(pairs[k].lcm, pairs[best].lcm) < 0) best = k;
        Pair pr = pairs[best];
        pairs.erase(pairs.begin() + best);

        const WorkPoly& gi = G[pr.i];
        const WorkPoly& gj = G[pr.j];
        // product criterion
        if (mono_mul(gi.lt.m, gj.lt.m) == pr.lcm) continue;
        // chain criterion: some k with LT_k | lcm and both other pairs gone
        bool skip = false;
        for (std::size_t k = 0; k < G.size() && !skip; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!G[k].lt.m.divides(pr.lcm)) continue;
            bool pending = false;
            for (const Pair& q : pairs) {
                if ((q.i == std::min(pr.i, k) && q.j == std::max(pr.i, k)) ||
                    (q.i == std::min(pr.j, k) && q.j == std::max(pr.j, k))) {
                    pending = true;
                    break;
                }
            }
            if (!pending) skip = true;
        }
        if (skip) continue;

        Term ti{mono_div(pr.lcm, gi.lt.m), 1};
        Term tj{mono_div(pr.lcm, gj.lt.m), 1};
        Polynomial s = poly_sub(poly_mul_term(gi.f, ti, p), poly_mul_term(gj.f, tj, p), p);
        std::vector<Polynomial> repr;
        if (track) {
            repr.assign(n_in, Polynomial::zero(ctx.arity()));
            for (std::size_t v = 0; v < n_in; ++v)
                repr[v] = poly_sub(poly_mul_term(gi.repr[v], ti, p),
                                   poly_mul_term(gj.repr[v], tj, p), p);
        }
        auto [r, rr] = reduce_full(std::move(s), std::move(repr));
        if (!r.is_zero()) add_poly(std::move(r), std::move(rr));
    }

    // minimalize: drop elements whose LT is divisible by another LT
    // (leading terms are pairwise distinct here, so divisibility is strict)
    std::vector<bool> keep(G.size(), true);
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = 0; j < G.size() && keep[i]; ++j)
            if (j != i && keep[j] && G[j].lt.m.divides(G[i].lt.m)) keep[i] = false;
    std::vector<WorkPoly> minimal;
    for (std::size_t i = 0; i < G.size(); ++i)
        if (keep[i]) minimal.push_back(std::move(G[i]));

    // tail-reduce each element against the others
    std::vector<WorkPoly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) {
                others.push_back(minimal[j].f);
                idx.push_back(j);
            }
        Division d = poly_divide(ctx, minimal[i].f, others, order);
        WorkPoly w;
        w.f = d.remainder;
        w.lt = w.f.leading(order);
        if (track) {
            w.repr = minimal[i].repr;
            for (std::size_t k = 0; k < others.size(); ++k) {
                if (d.quotients[k].is_zero()) continue;
                for (std::size_t v = 0; v < n_in; ++v)
                    w.repr[v] = poly_sub(w.repr[v],
                                         poly_mul(d.quotients[k], minimal[idx[k]].repr[v], p), p);
            }
        }
        reduced.push_back(std::move(w));
    }

    std::sort(reduced.begin(), reduced.end(), [&](const WorkPoly& a, const WorkPoly& b) {
        return order.compare(a.lt.m, b.lt.m) < 0;
    });

    GroebnerBasis gb;
    gb.order = order;
    gb.reduced = true;
    for (auto& w : reduced) {
        gb.basis.push_back(std::move(w.f));
        if (track) gb.reprs.push_back(std::move(w.repr));
    }
    return gb;
}

} // namespace

GroebnerBasis buchberger(const IdealSpec& I, const TermOrder& order, bool track_cofactors) {
    if (I.gens.empty()) throw PreconditionError("empty generator list");
    std::string key = fnv_digest(I.digest() + "|" + order.text());
    if (!track_cofactors) {
        if (auto hit = GbCache::instance().get(key, I.ctx)) return *hit;
    }
    std::vector<Polynomial> input = I.gens;
    for (const auto& r : I.ctx.relations) input.push_back(r);
    GroebnerBasis gb = buchberger_core(I.ctx, input, order, track_cofactors);
    gb.source_digest = key;
    if (!track_cofactors) GbCache::instance().put(key, I.ctx, gb);
    return gb;
}

bool ideal_membership(const Polynomial& f, const IdealSpec& I) {
    if (f.is_zero()) return true;
    GroebnerBasis gb = buchberger(I);
    return normal_form(I.ctx, f, gb).is_zero();
}

std::optional<std::vector<Polynomial>> membership_cofactors(const Polynomial& f,
                                                            const IdealSpec& I) {
    GroebnerBasis gb = buchberger(I, TermOrder{}, /*track_cofactors=*/true);
    Division d = poly_divide(I.ctx, f, gb.basis, gb.order);
    if (!d.remainder.is_zero()) return std::nullopt;
    std::size_t n_in = I.gens.size() + I.ctx.relations.size();
    std::vector<Polynomial> cof(n_in, Polynomial::zero(I.ctx.arity()));
    for (std::size_t k = 0; k < gb.basis.size(); ++k) {
        if (d.quotients[k].is_zero()) continue;
        for (std::size_t j = 0; j < n_in; ++j)
            cof[j] = poly_add(cof[j], poly_mul(d.quotients[k], gb.reprs[k][j], I.ctx.p), I.ctx.p);
    }
    return cof;
}

bool ideal_equal(const IdealSpec& I, const IdealSpec& J) {
    if (!(I.ctx == J.ctx)) throw ContextMismatchError("ideal_equal across different rings");
    TermOrder order;
    GroebnerBasis gi = buchberger(I, order);
    GroebnerBasis gj = buchberger(J, order);
    return gi.basis == gj.basis;
}

// ---- cache ----

struct GbCache::Impl {
    std::mutex mu;
    std::map<std::string, GroebnerBasis> mem;
    std::string dir; // empty = memory only
    bool dir_ok = false;
};

GbCache::GbCache() : impl_(new Impl) {}

GbCache& GbCache::instance() {
    static GbCache cache;
    return cache;
}

std::string serialize_basis(const RingContext& ctx, const GroebnerBasis& gb,
                            const std::string& key) {
    std::ostringstream os;
    os << "tckit-gb v1 " << key << "\n";
    for (const auto& f : gb.basis) os << print_polynomial(ctx, f) << "\n";
    return os.str();
}

std::optional<GroebnerBasis> deserialize_basis(const RingContext& ctx, const std::string& data,
                                               const std::string& expected_key) {
    std::istringstream is(data);
    std::string tag, version, key;
    if (!(is >> tag >> version >> key)) return std::nullopt;
    if (tag != "tckit-gb" || version != "v1" || key != expected_key) return std::nullopt;
    std::string line;
    std::getline(is, line);
    GroebnerBasis gb;
    gb.source_digest = key;
    try {
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            gb.basis.push_back(parse_polynomial(ctx, line));
        }
    } catch (const Error&) {
        return std::nullopt;
    }
    if (gb.basis.empty()) return std::nullopt;
    return gb;
}

std::optional<GroebnerBasis> GbCache::get(const std::string& key, const RingContext& ctx) {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->mem.find(key);
    if (it != impl_->mem.end()) return it->second;
    if (impl_->dir_ok) {
        std::ifstream in(impl_->dir + "/" + key + ".gb");
        if (in) {
            std::stringstream ss;
            ss << in.rdbuf();
            auto gb = deserialize_basis(ctx, ss.str(), key);
            if (gb) {
                impl_->mem[key] = *gb;
                return gb;
            }
            std::cerr << "tckit: warning: ignoring corrupt cache entry " << key << "\n";
        }
    }
    return std::nullopt;
}

void GbCache::put(const std::string& key, const RingContext& ctx, const GroebnerBasis& gb) {
    std::lock_guard<std::mutex> lock(impl_->mu);
    impl_->mem[key] = gb; // identical values: last writer wins
    if (impl_->dir_ok) {
        std::ofstream out(impl_->dir + "/" + key + ".gb");
        if (out) out << serialize_basis(ctx, gb, key);
    }
}

void GbCache::set_directory(const std::string& dir) {
    std::lock_guard<std::mutex> lock(impl_->mu);
    impl_->dir = dir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream probe(dir + "/.tckit-probe");
    impl_->dir_ok = probe.good();
    if (!impl_->dir_ok)
        std::cerr << "tckit: warning: cache dir unwritable, cache disabled: " << dir << "\n";
    else
        std::filesystem::remove(dir + "/.tckit-probe", ec);
}

void GbCache::clear() {
    std::lock_guard<std::mutex> lock(impl_->mu);
    impl_->mem.clear();
}

} // namespace tckit
