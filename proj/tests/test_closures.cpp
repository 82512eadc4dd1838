#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tckit/certificate.hpp"
#include "tckit/closures.hpp"

using namespace tckit;

namespace {

RingContext cone(std::uint32_t p) {
    RingContext ctx = make_context(p, {"x", "y", "z"});
    return make_context(p, {"x", "y", "z"}, {}, {parse_polynomial(ctx, "x^3+y^3+z^3")});
}

IdealSpec I(const RingContext& ctx, std::vector<std::string> gens) {
    return make_ideal(ctx, gens);
}

// all monomial multiples of x^k up to the degree cap, as candidate principal
// roots: used to brute-force the smallest J in one variable with f in J^{[2]}
bool brute_force_smallest_principal_root_is_unit(const RingContext& ctx) {
    Polynomial f = parse_polynomial(ctx, "x");
    for (unsigned d = 1; d <= 3; ++d) {
        Polynomial g = parse_polynomial(ctx, "x^" + std::to_string(d));
        IdealSpec Jq = frobenius_power_ideal(I(ctx, {print_polynomial(ctx, g)}), 1);
        if (ideal_membership(f, Jq)) return false; // proper J with x in J^{[2]}
    }
    return true;
}

} // namespace

TEST_CASE("frobenius_power_ideal") {
    RingContext c2 = make_context(2, {"x", "y"});
    CHECK(ideal_equal(frobenius_power_ideal(I(c2, {"x", "y"}), 1), I(c2, {"x^2", "y^2"})));
    IdealSpec J = I(c2, {"x+y", "x*y"});
    CHECK(ideal_equal(frobenius_power_ideal(J, 0), J));
    RingContext c3 = make_context(3, {"x", "y"});
    CHECK(ideal_equal(frobenius_power_ideal(I(c3, {"x+y"}), 1), I(c3, {"x^3+y^3"})));
}

TEST_CASE("frobenius_root") {
    RingContext c2 = make_context(2, {"x", "y"});
    CHECK(ideal_equal(frobenius_root(I(c2, {"x^2"}), 1), I(c2, {"x"})));
    // x^3 y = x^2 (xy) and x^2 y^2 = (xy)^2, so the root is (x, xy) = (x)
    CHECK(ideal_equal(frobenius_root(I(c2, {"x^3*y + x^2*y^2"}), 1), I(c2, {"x"})));
    // x = 1^2 * x: the root of (x) is the unit ideal, confirmed by brute force
    RingContext c1 = make_context(2, {"x"});
    IdealSpec root = frobenius_root(I(c1, {"x"}), 1);
    CHECK(ideal_membership(Polynomial::constant(1, 1, 2), root));
    CHECK(brute_force_smallest_principal_root_is_unit(c1));

    RingContext quot = cone(2);
    CHECK_THROWS_AS(frobenius_root(I(quot, {"x"}), 1), PreconditionError);
}

TEST_CASE("root/power adjunction") {
    RingContext ctx = make_context(2, {"x", "y"});
    std::mt19937 rng(717);
    std::uniform_int_distribution<Exp> expd(0, 5);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Polynomial> gens;
        for (int i = 0; i < 2; ++i) {
            std::vector<Term> terms;
            for (int t = 0; t < 3; ++t)
                terms.push_back({Monomial{{expd(rng), expd(rng)}}, 1});
            Polynomial f = Polynomial::make(2, std::move(terms), 2);
            if (!f.is_zero()) gens.push_back(f);
        }
        if (gens.empty()) continue;
        IdealSpec J = make_ideal(ctx, gens);
        unsigned e = 1 + (trial % 2);
        CHECK(ideal_equal(frobenius_root(frobenius_power_ideal(J, e), e), J));
    }
}

TEST_CASE("frobenius_closure_membership on the cubical cone") {
    RingContext R = cone(2);
    IdealSpec Iyz = I(R, {"y", "z"});
    Polynomial u = parse_polynomial(R, "x^2");

    auto cert = frobenius_closure_membership(u, Iyz, 1);
    REQUIRE(cert.has_value());
    CHECK(cert->e == 1);
    CHECK(verify_certificate(*cert, R));

    // membership at e = 0 for actual ideal elements
    auto direct = frobenius_closure_membership(parse_polynomial(R, "y"), Iyz, 3);
    REQUIRE(direct.has_value());
    CHECK(direct->e == 0);

    RingContext R7 = cone(7);
    CHECK_FALSE(
        frobenius_closure_membership(parse_polynomial(R7, "x^2"), I(R7, {"y", "z"}), 3)
            .has_value());
}

TEST_CASE("certificate JSON round trip and tamper detection") {
    RingContext R = cone(2);
    auto cert = frobenius_closure_membership(parse_polynomial(R, "x^2"), I(R, {"y", "z"}), 1);
    REQUIRE(cert.has_value());
    ClosureCertificate back = ClosureCertificate::from_json(cert->to_json());
    CHECK(back.e == cert->e);
    CHECK(back.element == cert->element);
    CHECK(back.cofactors == cert->cofactors);
    CHECK(verify_certificate(back, R));
    back.cofactors[0] = "x^5";
    CHECK_FALSE(verify_certificate(back, R));
}

TEST_CASE("frobenius_closure_ideal") {
    RingContext reg = make_context(2, {"x", "y"});
    ClosureChainResult r1 = frobenius_closure_ideal(I(reg, {"x"}), 4);
    CHECK(r1.stabilized);
    CHECK(ideal_equal(r1.closure, I(reg, {"x"})));

    RingContext R = cone(2);
    ClosureChainResult r2 = frobenius_closure_ideal(I(R, {"y", "z"}), 4);
    CHECK(r2.stabilized);
    CHECK(ideal_equal(r2.closure, I(R, {"x^2", "y", "z"})));
    // exhaust the monomial basis of R/(x^2, y, z): only 1 and x remain, and
    // neither joins the closure
    CHECK_FALSE(ideal_membership(parse_polynomial(R, "x"), r2.closure));
    CHECK_FALSE(ideal_membership(Polynomial::constant(3, 1, 2), r2.closure));

    RingContext R7 = cone(7);
    ClosureChainResult r3 = frobenius_closure_ideal(I(R7, {"y", "z"}), 3);
    CHECK(r3.stabilized);
    CHECK(ideal_equal(r3.closure, I(R7, {"y", "z"})));

    CHECK_THROWS_AS(frobenius_closure_ideal(I(reg, {"x"}), 0), PreconditionError);
}

TEST_CASE("tight_closure_evidence") {
    RingContext R7 = cone(7);
    IdealSpec Iyz = I(R7, {"y", "z"});
    Polynomial c = parse_polynomial(R7, "z");

    EvidenceReport inI = tight_closure_evidence(parse_polynomial(R7, "y"), Iyz, c, 3);
    CHECK(inI.all_pass());

    EvidenceReport x2 = tight_closure_evidence(parse_polynomial(R7, "x^2"), Iyz, c, 3);
    CHECK(x2.all_pass());

    EvidenceReport x1 = tight_closure_evidence(parse_polynomial(R7, "x"), Iyz, c, 3);
    CHECK_FALSE(x1.all_pass());
    CHECK(x1.per_e[0]); // e = 0 passes: z*x lies in (z)
    CHECK_THROWS_AS(
        tight_closure_evidence(parse_polynomial(R7, "x"), Iyz, Polynomial::zero(3), 1),
        PreconditionError);
}

TEST_CASE("is_m_primary") {
    RingContext R = cone(2);
    CHECK(is_m_primary(I(R, {"x", "y", "z"})));
    CHECK(is_m_primary(I(R, {"y", "z"}))); // x^3 = y^3 + z^3 in the quotient
    RingContext reg = make_context(2, {"x", "y", "z"});
    CHECK_FALSE(is_m_primary(I(reg, {"y", "z"})));
}

TEST_CASE("tight_closure_oracle") {
    RingContext R = cone(2);
    OracleReport member = tight_closure_oracle(parse_polynomial(R, "x^2"), I(R, {"y", "z"}));
    CHECK(member.verdict == TcVerdict::Member);
    REQUIRE(member.rule.has_value());
    CHECK(member.rule->pattern.find("Hasse") != std::string::npos);
    REQUIRE(member.certificate.has_value());
    CHECK(verify_certificate(*member.certificate, R));

    // non-homogeneous m-primary target still gets a definitive verdict
    OracleReport nh =
        tight_closure_oracle(parse_polynomial(R, "x^2"), I(R, {"y + x^2", "z"}));
    CHECK(nh.verdict != TcVerdict::EvidenceOnly);

    RingContext R7 = cone(7);
    OracleReport ev = tight_closure_oracle(parse_polynomial(R7, "x^2"), I(R7, {"y", "z"}));
    CHECK(ev.verdict == TcVerdict::EvidenceOnly);
    CHECK_FALSE(ev.rule.has_value());

    // non-member in the rule regime: x needs degree reasons, the closure chain
    // settles it
    OracleReport nm = tight_closure_oracle(parse_polynomial(R, "x"), I(R, {"y", "z"}));
    CHECK(nm.verdict == TcVerdict::NonMember);
    CHECK(nm.stabilized);
}

TEST_CASE("intersection_chain_membership") {
    RingContext R = cone(2);
    IdealSpec Iyz = I(R, {"y", "z"});

    ChainMembershipReport inI =
        intersection_chain_membership(parse_polynomial(R, "z"), Iyz, 4, 2);
    CHECK(inI.member_for_all_k());

    ChainMembershipReport x2 =
        intersection_chain_membership(parse_polynomial(R, "x^2"), Iyz, 4, 2);
    CHECK(x2.member_for_all_k());

    ChainMembershipReport x1 =
        intersection_chain_membership(parse_polynomial(R, "x"), Iyz, 3, 2);
    REQUIRE(x1.per_k.size() == 3);
    CHECK(x1.per_k[0].has_value()); // x lies in I + m
    CHECK_FALSE(x1.per_k[1].has_value());
    CHECK_FALSE(x1.per_k[2].has_value());

    CHECK_THROWS_AS(intersection_chain_membership(parse_polynomial(R, "x"), Iyz, 0, 2),
                    PreconditionError);
}

TEST_CASE("power_of_m_generators") {
    RingContext ctx = make_context(2, {"x", "y", "z"});
    CHECK(power_of_m_generators(ctx, 0).size() == 1);
    CHECK(power_of_m_generators(ctx, 1).size() == 3);
    CHECK(power_of_m_generators(ctx, 2).size() == 6);
    CHECK(power_of_m_generators(ctx, 3).size() == 10);
}
