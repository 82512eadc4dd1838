#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tckit/groebner.hpp"
#include "tckit/poly.hpp"

namespace tckit {

// Witness that u^{p^e} (or c*u^{p^e}) lies in the e-th bracket power of the
// target ideal, with explicit cofactors. Replaying the identity through the
// polynomial and Groebner layers verifies it exactly.
struct ClosureCertificate {
    enum class Kind { Frobenius, TightEvidence };
    Kind kind = Kind::Frobenius;
    std::uint32_t p = 2;
    unsigned e = 0; // so q = p^e
    std::string element;                     // u, canonical text
    std::string target_digest;               // IdealSpec digest
    std::vector<std::string> ideal_gens;     // canonical text
    std::optional<std::string> test_element; // c; absent for kind Frobenius
    std::vector<std::string> cofactors;      // h_i with (c*)u^q = sum h_i g_i^q mod relations

    std::string to_json() const;
    static ClosureCertificate from_json(const std::string& text);
};

// Re-evaluates sum h_i g_i^q - (c*)u^q and checks it reduces to 0 modulo the
// context relations. Uses only the polynomial and Groebner layers.
bool verify_certificate(const ClosureCertificate& cert, const RingContext& ctx);

} // namespace tckit
