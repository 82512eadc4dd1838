#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tckit/certificate.hpp"
#include "tckit/closures.hpp"
#include "tckit/groebner.hpp"
#include "tckit/hull.hpp"
#include "tckit/modules.hpp"
#include "tckit/newton.hpp"
#include "tckit/selftest.hpp"
#include "tckit/specfile.hpp"

namespace {

using tckit::Error;
using json = nlohmann::json;

constexpr int kMember = 0;
constexpr int kNotFound = 1;
constexpr int kError = 2;
constexpr int kIndeterminate = 3;

struct Common {
    std::string file;
    std::string u;
    std::string ideal;
    std::string c;
    unsigned e = 1;
    unsigned e_max = 4;
    unsigned k_max = 6;
    unsigned E = 32;
    unsigned q = 1;
    unsigned n = 1;
    unsigned t = 0;
    unsigned k = 0;
    unsigned p = 2;
    std::string order = "grevlex";
    std::string scalar;
    bool as_json = false;
    bool verify = false;
    std::string cache_dir;
};

void setup_cache(const Common& opt) {
    std::string dir = opt.cache_dir;
    if (dir.empty())
        if (const char* env = std::getenv("TCKIT_CACHE")) dir = env;
    if (!dir.empty()) tckit::GbCache::instance().set_directory(dir);
}

tckit::SpecFile load(const Common& opt) {
    if (opt.file.empty()) throw Error("an input file is required");
    return tckit::load_specfile(opt.file);
}

// --ideal "g1, g2, ..." overrides the file's ideal block
tckit::IdealSpec resolve_ideal(const Common& opt, const tckit::SpecFile& spec) {
    if (!spec.ring) throw Error("input has no ring block");
    if (!opt.ideal.empty()) {
        std::vector<std::string> parts;
        std::string cur;
        for (char ch : opt.ideal) {
            if (ch == ',') {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        parts.push_back(cur);
        return tckit::make_ideal(*spec.ring, parts);
    }
    if (!spec.ideal) throw Error("no ideal given (file block or --ideal)");
    return *spec.ideal;
}

tckit::Polynomial resolve_u(const Common& opt, const tckit::RingContext& ctx) {
    if (opt.u.empty()) throw Error("--u is required");
    return tckit::parse_polynomial(ctx, opt.u);
}

void emit(const Common& opt, const json& payload, const std::string& text) {
    if (opt.as_json) {
        json out = payload;
        out["tckit"] = 1;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

int maybe_verify(const Common& opt, const tckit::ClosureCertificate& cert,
                 const tckit::RingContext& ctx) {
    if (!opt.verify) return kMember;
    if (!tckit::verify_certificate(cert, ctx)) {
        std::cerr << "certificate failed to verify\n";
        return kError;
    }
    return kMember;
}

int cmd_gb(const Common& opt) {
    auto spec = load(opt);
    auto I = resolve_ideal(opt, spec);
    auto G = tckit::buchberger(I, tckit::TermOrder::parse(opt.order));
    json basis = json::array();
    std::string text;
    for (const auto& g : G.basis) {
        std::string s = tckit::print_polynomial(I.ctx, g);
        basis.push_back(s);
        text += s + "\n";
    }
    emit(opt, {{"command", "gb"}, {"order", G.order.text()}, {"basis", basis}}, text);
    return kMember;
}

int cmd_frob_power(const Common& opt) {
    auto spec = load(opt);
    auto I = resolve_ideal(opt, spec);
    auto J = tckit::frobenius_power_ideal(I, opt.e);
    json gens = json::array();
    std::string text;
    for (const auto& g : J.gens) {
        std::string s = tckit::print_polynomial(I.ctx, g);
        gens.push_back(s);
        text += s + "\n";
    }
    emit(opt, {{"command", "frob-power"}, {"e", opt.e}, {"gens", gens}}, text);
    return kMember;
}

int cmd_frob_root(const Common& opt) {
    auto spec = load(opt);
    auto I = resolve_ideal(opt, spec);
    auto J = tckit::frobenius_root(I, opt.e);
    json gens = json::array();
    std::string text;
    for (const auto& g : J.gens) {
        std::string s = tckit::print_polynomial(I.ctx, g);
        gens.push_back(s);
        text += s + "\n";
    }
    emit(opt, {{"command", "frob-root"}, {"e", opt.e}, {"gens", gens}}, text);
    return kMember;
}

int cmd_fc_member(const Common& opt) {
    auto spec = load(opt);
    auto I = resolve_ideal(opt, spec);
    auto u = resolve_u(opt, I.ctx);
    auto cert = tckit::frobenius_closure_membership(u, I, opt.e_max);
    if (!cert) {
        emit(opt, {{"command", "fc-member"}, {"verdict", "not-found"}, {"e_max", opt.e_max}},
             "not found up to e_max = " + std::to_string(opt.e_max) + "\n");
        return kNotFound;
    }
    emit(opt, json::parse(cert->to_json()),
         "member at e = " + std::to_string(cert->e) + "\n");
    return maybe_verify(opt, *cert, I.ctx);
}

int cmd_fc_ideal(const Common& opt) {
    auto spec = load(opt);
    auto I = resolve_ideal(opt, spec);
    auto res = tckit::frobenius_closure_ideal(I, opt.e_max);
    json gens = json::array();
    std::string text;
    for (const auto& g : res.closure.gens) {
        std::string s = tckit::print_polynomial(I.ctx, g);
        gens.push_back(s);
        text += s + "\n";
    }
    text += res.stabilized ? "stabilized at e = " + std::to_string(res.e_stop) + "\n"
                           : "not stabilized up to e_max\n";
    emit(opt,
         {{"command", "fc-ideal"},
          {"gens", gens},
          {"stabilized", res.stabilized},
          {"e_stop", res.e_stop}},
         text);
    return res.stabilized ? kMember : kIndeterminate;
}

int cmd_tc_evidence(const Common& opt) {
    auto spec = load(opt);
    auto I = resolve_ideal(opt, spec);
    auto u = resolve_u(opt, I.ctx);
    if (opt.c.empty()) throw Error("--c (test element) is required");
    auto c = tckit::parse_polynomial(I.ctx, opt.c);
    auto ev = tckit::tight_closure_evidence(u, I, c, opt.e_max);
    json per_e = json::array();
    std::string text;
    for (std::size_t e = 0; e < ev.per_e.size(); ++e) {
        per_e.push_back(static_cast<bool>(ev.per_e[e]));
        text += "e = " + std::to_string(e) + ": " + (ev.per_e[e] ? "pass" : "fail") + "\n";
    }
    emit(opt, {{"command", "tc-evidence"}, {"per_e", per_e}, {"all_pass", ev.all_pass()}},
         text);
    return ev.all_pass() ? kIndeterminate : kNotFound;
}

int cmd_tc_oracle(const Common& opt) {
    auto spec = load(opt);
    auto I = resolve_ideal(opt, spec);
    auto u = resolve_u(opt, I.ctx);
    std::optional<tckit::Polynomial> c;
    if (!opt.c.empty()) c = tckit::parse_polynomial(I.ctx, opt.c);
    auto rep = tckit::tight_closure_oracle(u, I, c, opt.e_max);
    const char* verdict = rep.verdict == tckit::TcVerdict::Member      ? "member"
                          : rep.verdict == tckit::TcVerdict::NonMember ? "not-member"
                                                                       : "evidence-only";
    json out = {{"command", "tc-oracle"}, {"verdict", verdict}, {"note", rep.note}};
    std::string text = std::string(verdict) + ": " + rep.note + "\n";
    if (rep.rule) {
        out["rule"] = {{"pattern", rep.rule->pattern},
                       {"identity", rep.rule->identity},
                       {"scope", rep.rule->scope},
                       {"citation", rep.rule->citation}};
        text += "rule: " + rep.rule->identity + " [" + rep.rule->citation + "]\n";
    }
    if (rep.certificate) out["certificate"] = json::parse(rep.certificate->to_json());
    emit(opt, out, text);
    if (rep.certificate && opt.verify && !tckit::verify_certificate(*rep.certificate, I.ctx))
        return kError;
    switch (rep.verdict) {
    case tckit::TcVerdict::Member: return kMember;
    case tckit::TcVerdict::NonMember: return kNotFound;
    default: return kIndeterminate;
    }
}

int cmd_chain_member(const Common& opt) {
    auto spec = load(opt);
    auto I = resolve_ideal(opt, spec);
    auto u = resolve_u(opt, I.ctx);
    auto rep = tckit::intersection_chain_membership(u, I, opt.k_max, opt.e_max);
    json per_k = json::array();
    std::string text;
    for (std::size_t k = 0; k < rep.per_k.size(); ++k) {
        bool ok = rep.per_k[k].has_value();
        per_k.push_back(ok);
        text += "k = " + std::to_string(k + 1) + ": " + (ok ? "member" : "not found") + "\n";
    }
    emit(opt,
         {{"command", "chain-member"}, {"per_k", per_k}, {"all", rep.member_for_all_k()}},
         text);
    return rep.member_for_all_k() ? kMember : kNotFound;
}

// u is a module element: comma-separated coordinates
int cmd_module_fc(const Common& opt) {
    auto spec = load(opt);
    if (!spec.ring) throw Error("input has no ring block");
    if (!spec.module || !spec.submodule)
        throw Error("module-fc needs module and submodule blocks");
    if (opt.u.empty()) throw Error("--u is required (comma-separated coordinates)");
    tckit::ModuleElement u;
    std::string cur;
    for (char ch : opt.u + ",") {
        if (ch == ',') {
            u.coords.push_back(tckit::parse_polynomial(*spec.ring, cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (u.rank() != spec.module->ambient.rank())
        throw Error("element length does not match module rank");
    auto cert = tckit::module_frobenius_closure_membership(*spec.ring, u, *spec.submodule,
                                                          *spec.module, opt.e_max);
    if (!cert) {
        emit(opt, {{"command", "module-fc"}, {"verdict", "not-found"}},
             "not found up to e_max = " + std::to_string(opt.e_max) + "\n");
        return kNotFound;
    }
    emit(opt, json::parse(cert->to_json()),
         "member at e = " + std::to_string(cert->e) + "\n");
    return kMember;
}

int cmd_coprimary(const Common& opt) {
    auto spec = load(opt);
    if (!spec.ring || !spec.module || !spec.submodule)
        throw Error("coprimary needs ring, module and submodule blocks");
    auto res = tckit::is_m_coprimary(*spec.ring, *spec.module, *spec.submodule);
    json out = {{"command", "coprimary"}};
    std::string text;
    switch (res.verdict) {
    case tckit::Trilean::True:
        out["verdict"] = "coprimary";
        out["n"] = *res.n;
        text = "coprimary: m^" + std::to_string(*res.n) + " M inside N\n";
        emit(opt, out, text);
        return kMember;
    case tckit::Trilean::False:
        out["verdict"] = "not-coprimary";
        emit(opt, out, "not coprimary\n");
        return kNotFound;
    default:
        out["verdict"] = "unknown";
        emit(opt, out, "unknown at the search cap\n");
        return kIndeterminate;
    }
}

int cmd_dual_dims(const Common& opt) {
    auto spec = load(opt);
    if (!spec.ring) throw Error("input has no ring block");
    auto dims = tckit::graded_dual_dimensions(*spec.ring, opt.q, opt.n);
    json out = {{"command", "dual-dims"}, {"q", opt.q}, {"n", opt.n}};
    json rows = json::array();
    std::string text;
    for (const auto& [j, dim] : dims) {
        rows.push_back({{"j", j}, {"dim", dim}});
        text += "j = " + std::to_string(j) + ": " + std::to_string(dim) + "\n";
    }
    out["dims"] = rows;
    emit(opt, out, text);
    return kMember;
}

int cmd_ic_monomial(const Common& opt) {
    if (opt.ideal.empty()) throw Error("--ideal \"(m1, m2, ...)\" is required");
    auto I = tckit::parse_monomial_ideal(opt.ideal);
    if (!opt.u.empty()) {
        auto Q = tckit::parse_monomial_ideal("(" + opt.u + ")");
        if (Q.gens.size() != 1) throw Error("--u must be a single monomial");
        bool in = tckit::closure_membership(Q.gens[0], I);
        emit(opt, {{"command", "ic-monomial"}, {"member", in}},
             std::string(in ? "member" : "not member") + "\n");
        return in ? kMember : kNotFound;
    }
    auto C = tckit::integral_closure_generators(I);
    emit(opt, {{"command", "ic-monomial"}, {"closure", tckit::print_monomial_ideal(C)}},
         tckit::print_monomial_ideal(C) + "\n");
    return kMember;
}

int cmd_bs_check(const Common& opt) {
    if (opt.ideal.empty()) throw Error("--ideal \"(m1, m2, ...)\" is required");
    auto I = tckit::parse_monomial_ideal(opt.ideal);
    auto rep = tckit::briancon_skoda_check(I, opt.k);
    json out = {{"command", "bs-check"}, {"pass", rep.pass}, {"d", rep.d}, {"k", rep.k}};
    std::string text = rep.pass ? "contained\n" : "containment failed\n";
    emit(opt, out, text);
    return rep.pass ? kMember : kNotFound;
}

int cmd_hull_dcc(const Common& opt) {
    auto spec = load(opt);
    if (!spec.formalsum) throw Error("hull-dcc needs a formalsum block");
    auto rep = tckit::dcc_check(spec.formalsum->support());
    json out = {{"command", "hull-dcc"}, {"note", rep.note}};
    std::string text;
    switch (rep.verdict) {
    case tckit::DccVerdict::Pass:
        out["verdict"] = "pass";
        text = "dcc holds: " + rep.note + "\n";
        emit(opt, out, text);
        return kMember;
    case tckit::DccVerdict::Fail:
        out["verdict"] = "fail";
        text = "dcc fails: " + rep.note + "\n";
        emit(opt, out, text);
        return kNotFound;
    default:
        out["verdict"] = "indeterminate";
        text = "indeterminate: " + rep.note + "\n";
        emit(opt, out, text);
        return kIndeterminate;
    }
}

int cmd_hull_mul(const Common& opt) {
    auto spec = load(opt);
    if (!spec.formalsum) throw Error("hull-mul needs a formalsum block");
    if (opt.scalar.empty()) throw Error("--s (scalar) is required");
    const auto& f = *spec.formalsum;
    auto s = tckit::parse_frac_poly(f.p, f.arity, opt.scalar);
    auto prod = tckit::scalar_multiply(s, f, opt.E);
    std::string text = tckit::print_formal_sum(prod.result) + "\n" +
                       (prod.exact ? "exact\n" : "truncated (inexact beyond E)\n");
    emit(opt,
         {{"command", "hull-mul"},
          {"result", tckit::print_formal_sum(prod.result)},
          {"exact", prod.exact}},
         text);
    return prod.exact ? kMember : kIndeterminate;
}

int cmd_hull_witness(const Common& opt) {
    auto w = tckit::nonvanishing_witness(opt.t, opt.E, opt.p);
    std::string survivor;
    for (std::size_t i = 0; i < w.survivor.arity(); ++i) {
        if (!survivor.empty()) survivor += "*";
        survivor += "x" + std::to_string(i + 1) + "^(" +
                    tckit::frac_text(w.survivor.c[i], opt.p) + ")";
    }
    std::string text = "survivor: " + survivor + "\n" +
                       "count at E: " + std::to_string(w.survivor_count_at_E) + "\n";
    emit(opt,
         {{"command", "hull-witness"},
          {"survivor", survivor},
          {"count", w.survivor_count_at_E}},
         text);
    return kMember;
}

int cmd_selftest(const Common& opt) {
    auto rep = tckit::run_acceptance(opt.as_json ? nullptr : &std::cout);
    if (opt.as_json) {
        json items = json::array();
        for (const auto& it : rep.items)
            items.push_back({{"id", it.id},
                             {"title", it.title},
                             {"pass", it.pass},
                             {"detail", it.detail}});
        json out = {{"command", "selftest"}, {"items", items}, {"all_pass", rep.all_pass()}};
        out["tckit"] = 1;
        std::cout << out.dump(2) << "\n";
    }
    return rep.all_pass() ? kMember : kNotFound;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tight and Frobenius closure toolkit"};
    app.require_subcommand(1);
    Common opt;

    auto add_common = [&](CLI::App* sub, bool needs_file) {
        if (needs_file) sub->add_option("file", opt.file, "problem description file");
        sub->add_flag("--json", opt.as_json, "JSON output");
        sub->add_option("--cache-dir", opt.cache_dir, "on-disk GB cache directory");
        return sub;
    };

    auto* gb = add_common(app.add_subcommand("gb", "reduced Groebner basis"), true);
    gb->add_option("--ideal", opt.ideal);
    gb->add_option("--order", opt.order);

    auto* fp = add_common(app.add_subcommand("frob-power", "bracket power I^[p^e]"), true);
    fp->add_option("--ideal", opt.ideal);
    fp->add_option("--e", opt.e);

    auto* fr = add_common(app.add_subcommand("frob-root", "Frobenius root"), true);
    fr->add_option("--ideal", opt.ideal);
    fr->add_option("--e", opt.e);

    auto* fm = add_common(app.add_subcommand("fc-member", "Frobenius closure membership"), true);
    fm->add_option("--ideal", opt.ideal);
    fm->add_option("--u", opt.u);
    fm->add_option("--e-max", opt.e_max);
    fm->add_flag("--verify", opt.verify);

    auto* fi = add_common(app.add_subcommand("fc-ideal", "Frobenius closure of an ideal"), true);
    fi->add_option("--ideal", opt.ideal);
    fi->add_option("--e-max", opt.e_max);

    auto* te = add_common(app.add_subcommand("tc-evidence", "tight closure evidence"), true);
    te->add_option("--ideal", opt.ideal);
    te->add_option("--u", opt.u);
    te->add_option("--c", opt.c);
    te->add_option("--e-max", opt.e_max);

    auto* to = add_common(app.add_subcommand("tc-oracle", "tight closure oracle"), true);
    to->add_option("--ideal", opt.ideal);
    to->add_option("--u", opt.u);
    to->add_option("--c", opt.c);
    to->add_option("--e-max", opt.e_max);
    to->add_flag("--verify", opt.verify);

    auto* cm = add_common(app.add_subcommand("chain-member", "membership in I + m^k"), true);
    cm->add_option("--ideal", opt.ideal);
    cm->add_option("--u", opt.u);
    cm->add_option("--k-max", opt.k_max);
    cm->add_option("--e-max", opt.e_max);

    auto* mf = add_common(app.add_subcommand("module-fc", "module Frobenius closure"), true);
    mf->add_option("--u", opt.u);
    mf->add_option("--e-max", opt.e_max);

    add_common(app.add_subcommand("coprimary", "m-coprimary test"), true);

    auto* dd = add_common(app.add_subcommand("dual-dims", "graded dual dimensions"), true);
    dd->add_option("--q", opt.q);
    dd->add_option("--n", opt.n);

    auto* ic = add_common(app.add_subcommand("ic-monomial", "monomial integral closure"), false);
    ic->add_option("--ideal", opt.ideal);
    ic->add_option("--u", opt.u);

    auto* bs = add_common(app.add_subcommand("bs-check", "Briancon-Skoda containment"), false);
    bs->add_option("--ideal", opt.ideal);
    bs->add_option("--k", opt.k);

    add_common(app.add_subcommand("hull-dcc", "dcc check for a formal sum"), true);

    auto* hm = add_common(app.add_subcommand("hull-mul", "scalar action on a formal sum"), true);
    hm->add_option("--s", opt.scalar);
    hm->add_option("--E", opt.E);

    auto* hw = add_common(app.add_subcommand("hull-witness", "nonvanishing witness"), false);
    hw->add_option("--t", opt.t);
    hw->add_option("--E", opt.E);
    hw->add_option("--p", opt.p);

    add_common(app.add_subcommand("selftest", "run the acceptance suite"), false);

    CLI11_PARSE(app, argc, argv);

    try {
        setup_cache(opt);
        CLI::App* sub = app.get_subcommands().front();
        const std::string& name = sub->get_name();
        if (name == "gb") return cmd_gb(opt);
        if (name == "frob-power") return cmd_frob_power(opt);
        if (name == "frob-root") return cmd_frob_root(opt);
        if (name == "fc-member") return cmd_fc_member(opt);
        if (name == "fc-ideal") return cmd_fc_ideal(opt);
        if (name == "tc-evidence") return cmd_tc_evidence(opt);
        if (name == "tc-oracle") return cmd_tc_oracle(opt);
        if (name == "chain-member") return cmd_chain_member(opt);
        if (name == "module-fc") return cmd_module_fc(opt);
        if (name == "coprimary") return cmd_coprimary(opt);
        if (name == "dual-dims") return cmd_dual_dims(opt);
        if (name == "ic-monomial") return cmd_ic_monomial(opt);
        if (name == "bs-check") return cmd_bs_check(opt);
        if (name == "hull-dcc") return cmd_hull_dcc(opt);
        if (name == "hull-mul") return cmd_hull_mul(opt);
        if (name == "hull-witness") return cmd_hull_witness(opt);
        if (name == "selftest") return cmd_selftest(opt);
        std::cerr << "unknown command\n";
        return kError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
}
