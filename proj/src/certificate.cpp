#include "tckit/certificate.hpp"

#include <nlohmann/json.hpp>

namespace tckit {

using nlohmann::json;

std::string ClosureCertificate::to_json() const {
    json j;
    j["tckit"] = 1;
    j["kind"] = kind == Kind::Frobenius ? "frobenius" : "tight-evidence";
    j["p"] = p;
    j["e"] = e;
    j["u"] = element;
    j["ideal"] = ideal_gens;
    j["target"] = target_digest;
    if (test_element) j["test_element"] = *test_element;
    j["cofactors"] = cofactors;
    return j.dump(2);
}

ClosureCertificate ClosureCertificate::from_json(const std::string& text) {
    json j = json::parse(text);
    if (!j.contains("tckit") || j["tckit"].get<int>() != 1)
        throw Error("unsupported certificate schema");
    ClosureCertificate c;
    std::string k = j.at("kind").get<std::string>();
    if (k == "frobenius") c.kind = Kind::Frobenius;
    else if (k == "tight-evidence") c.kind = Kind::TightEvidence;
    else throw Error("unknown certificate kind: " + k);
    c.p = j.at("p").get<std::uint32_t>();
    c.e = j.at("e").get<unsigned>();
    c.element = j.at("u").get<std::string>();
    c.ideal_gens = j.at("ideal").get<std::vector<std::string>>();
    c.target_digest = j.value("target", "");
    if (j.contains("test_element")) c.test_element = j["test_element"].get<std::string>();
    c.cofactors = j.at("cofactors").get<std::vector<std::string>>();
    return c;
}

bool verify_certificate(const ClosureCertificate& cert, const RingContext& ctx) {
    if (cert.p != ctx.p) return false;
    if (cert.cofactors.size() != cert.ideal_gens.size()) return false;
    try {
        Polynomial u = parse_polynomial(ctx, cert.element);
        Polynomial lhs = Polynomial::zero(ctx.arity());
        for (std::size_t i = 0; i < cert.ideal_gens.size(); ++i) {
            Polynomial g = parse_polynomial(ctx, cert.ideal_gens[i]);
            Polynomial h = parse_polynomial(ctx, cert.cofactors[i]);
            lhs = poly_add(lhs, poly_mul(h, frobenius_power_poly(ctx, g, cert.e), ctx.p), ctx.p);
        }
        Polynomial rhs = frobenius_power_poly(ctx, u, cert.e);
        if (cert.test_element)
            rhs = poly_mul(parse_polynomial(ctx, *cert.test_element), rhs, ctx.p);
        Polynomial diff = poly_sub(lhs, rhs, ctx.p);
        if (diff.is_zero()) return true;
        if (ctx.relations.empty()) return false;
        RingContext plain = ctx;
        plain.relations.clear();
        IdealSpec rel = make_ideal(plain, ctx.relations);
        return ideal_membership(diff, rel);
    } catch (const Error&) {
        return false;
    }
}

} // namespace tckit
