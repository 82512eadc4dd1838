#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tckit/certificate.hpp"
#include "tckit/groebner.hpp"
#include "tckit/poly.hpp"

namespace tckit {

// Ideal generated by g^{p^e} for each generator g.
IdealSpec frobenius_power_ideal(const IdealSpec& I, unsigned e);

// The p^e-th Frobenius root in the polynomial ring: the smallest ideal J with
// I contained in J^{[q]}. Each generator is decomposed over the exponent box
// [0, q)^n as g = sum_mu h_mu^q x^mu; the output is generated by all h_mu.
// Requires a relation-free context.
IdealSpec frobenius_root(const IdealSpec& I, unsigned e);

// First e <= e_max with u^{p^e} in I^{[p^e]} (relations adjoined), as a
// replayable certificate; nullopt means "not found up to e_max", which is not
// a non-membership proof.
std::optional<ClosureCertificate> frobenius_closure_membership(const Polynomial& u,
                                                               const IdealSpec& I,
                                                               unsigned e_max);

struct ClosureChainResult {
    IdealSpec closure; // C_{e_stop}
    bool stabilized = false;
    unsigned e_stop = 0;
    std::vector<IdealSpec> chain; // C_0 .. C_{e_stop}
};

// Ascending chain C_e = image in R of the e-th Frobenius root of the lifted
// ideal I^{[q]}P + (rel)P; stops at the first C_e = C_{e+1} or at e_max.
// The stabilization flag is heuristic: no effective bound is known.
ClosureChainResult frobenius_closure_ideal(const IdealSpec& I, unsigned e_max);

struct EvidenceReport {
    Polynomial test_element;
    std::vector<bool> per_e; // index e = 0..e_max
    bool all_pass() const;
};

// Checks c*u^{p^e} in I^{[p^e]} for every e <= e_max. All-pass is evidence
// (not proof) of u in I*; a fail at large e is evidence against.
EvidenceReport tight_closure_evidence(const Polynomial& u, const IdealSpec& I,
                                      const Polynomial& c, unsigned e_max);

// True iff R/I is finite-dimensional over K: the staircase of I + relations
// contains a pure power of every variable.
bool is_m_primary(const IdealSpec& I);

struct OracleRule {
    std::string pattern;  // ring pattern matched
    std::string identity; // closure identity granted
    std::string scope;
    std::string citation;
};

// The theorem-backed rule table. Currently: the cubical cone
// K[x,y,z]/(x^3+y^3+z^3) with p = 2 mod 3 (Hasse invariant 0), where
// I* = I^F for m-primary ideals, homogeneous or not.
std::optional<OracleRule> match_oracle_rule(const RingContext& ctx);

enum class TcVerdict { Member, NonMember, EvidenceOnly };

struct OracleReport {
    TcVerdict verdict = TcVerdict::EvidenceOnly;
    std::optional<OracleRule> rule;
    std::optional<ClosureCertificate> certificate;
    std::optional<EvidenceReport> evidence;
    bool stabilized = false; // meaningful for NonMember
    std::string note;
};

OracleReport tight_closure_oracle(const Polynomial& u, const IdealSpec& I,
                                  const std::optional<Polynomial>& c = std::nullopt,
                                  unsigned e_max = 4);

// Generators of m^k (all degree-k monomials in the variables).
std::vector<Polynomial> power_of_m_generators(const RingContext& ctx, unsigned k);

struct ChainMembershipReport {
    std::vector<std::optional<ClosureCertificate>> per_k; // k = 1..k_max
    bool member_for_all_k() const;
};

// Frobenius-closure membership of u in I + m^k for k = 1..k_max.
ChainMembershipReport intersection_chain_membership(const Polynomial& u, const IdealSpec& I,
                                                    unsigned k_max, unsigned e_max);

} // namespace tckit
