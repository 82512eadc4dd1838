#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tckit/poly.hpp"

namespace tckit {

struct IdealSpec {
    RingContext ctx;
    std::vector<Polynomial> gens;

    std::string digest() const;
};

IdealSpec make_ideal(const RingContext& ctx, std::vector<Polynomial> gens);
IdealSpec make_ideal(const RingContext& ctx, const std::vector<std::string>& gens);

struct GroebnerBasis {
    std::vector<Polynomial> basis; // reduced: monic, interreduced, sorted
    TermOrder order;
    bool reduced = true;
    std::string source_digest;
    // When cofactors were requested: basis[i] = sum_j reprs[i][j] * input[j],
    // where the input list is gens followed by the context relations.
    std::vector<std::vector<Polynomial>> reprs;

    bool has_reprs() const { return !reprs.empty(); }
};

// Reduced Groebner basis of (gens) + (context relations) in the polynomial
// ring. Deterministic for fixed input and order. Results without cofactor
// tracking are memoized in the process-wide cache.
GroebnerBasis buchberger(const IdealSpec& I, const TermOrder& order = {},
                         bool track_cofactors = false);

// Unique remainder of f modulo G.
Polynomial normal_form(const RingContext& ctx, const Polynomial& f, const GroebnerBasis& G);

struct Division {
    Polynomial remainder;
    std::vector<Polynomial> quotients; // f = sum quotients[i]*divisors[i] + remainder
};

Division poly_divide(const RingContext& ctx, const Polynomial& f,
                     const std::vector<Polynomial>& divisors, const TermOrder& order);

// f in I computed in R = P/(relations); relations are adjoined automatically.
bool ideal_membership(const Polynomial& f, const IdealSpec& I);

// Cofactors of a membership: f = sum h_i * gens[i] + sum t_j * relations[j].
// Returns nullopt when f is not in the ideal.
std::optional<std::vector<Polynomial>> membership_cofactors(const Polynomial& f,
                                                            const IdealSpec& I);

bool ideal_equal(const IdealSpec& I, const IdealSpec& J);

// ---- GB cache ----

class GbCache {
public:
    static GbCache& instance();
    std::optional<GroebnerBasis> get(const std::string& key, const RingContext& ctx);
    void put(const std::string& key, const RingContext& ctx, const GroebnerBasis& gb);
    // Optional on-disk persistence; an unwritable dir disables persistence
    // with a warning, computation proceeds.
    void set_directory(const std::string& dir);
    void clear();

private:
    struct Impl;
    Impl* impl_;
    GbCache();
};

// On-disk record format: header "tckit-gb v1 <hex digest>", then one
// polynomial per line in canonical text syntax.
std::string serialize_basis(const RingContext& ctx, const GroebnerBasis& gb,
                            const std::string& key);
std::optional<GroebnerBasis> deserialize_basis(const RingContext& ctx, const std::string& data,
                                               const std::string& expected_key);

} // namespace tckit
