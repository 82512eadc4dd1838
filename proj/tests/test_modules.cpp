#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tckit/closures.hpp"
#include "tckit/modules.hpp"

using namespace tckit;

namespace {

RingContext cone(std::uint32_t p) {
    RingContext ctx = make_context(p, {"x", "y", "z"});
    return make_context(p, {"x", "y", "z"}, {}, {parse_polynomial(ctx, "x^3+y^3+z^3")});
}

ModuleElement vec(const RingContext& ctx, std::vector<std::string> coords) {
    ModuleElement u;
    for (const auto& s : coords) u.coords.push_back(parse_polynomial(ctx, s));
    return u;
}

PresentedModule free_module(std::size_t rank) {
    PresentedModule M;
    M.ambient.shifts.assign(rank, 0);
    return M;
}

} // namespace

TEST_CASE("validate_module degree bookkeeping") {
    RingContext ctx = make_context(2, {"x", "y"});
    PresentedModule M = free_module(2);
    M.relations = {{parse_polynomial(ctx, "x"), parse_polynomial(ctx, "y")}};
    validate_module(ctx, M); // consistent column

    PresentedModule bad = M;
    bad.relations = {{parse_polynomial(ctx, "x"), parse_polynomial(ctx, "y^2")}};
    CHECK_THROWS_AS(validate_module(ctx, bad), Error);

    // a shift can repair the same column
    PresentedModule shifted = bad;
    shifted.ambient.shifts = {1, 0};
    validate_module(ctx, shifted);

    bad.graded = false;
    validate_module(ctx, bad); // ungraded carrier skips the degree check
}

TEST_CASE("frobenius_functor on presentations") {
    RingContext ctx = make_context(2, {"x", "y"});
    PresentedModule M = free_module(2);
    M.relations = {{parse_polynomial(ctx, "x"), parse_polynomial(ctx, "y")}};
    PresentedModule M1 = frobenius_functor(ctx, M, 1);
    CHECK(M1.relations[0][0] == parse_polynomial(ctx, "x^2"));
    CHECK(M1.relations[0][1] == parse_polynomial(ctx, "y^2"));
    PresentedModule M0 = frobenius_functor(ctx, M, 0);
    CHECK(M0.relations == M.relations);

    // cyclic R/I: the functor image presents R/I^{[q]}
    IdealSpec I = make_ideal(ctx, std::vector<std::string>{"x^2+y", "y^3"});
    PresentedModule C = free_module(1);
    for (const auto& g : I.gens) C.relations.push_back({g});
    C.graded = false;
    PresentedModule C2 = frobenius_functor(ctx, C, 2);
    IdealSpec I4 = frobenius_power_ideal(I, 2);
    std::vector<Polynomial> image;
    for (const auto& col : C2.relations) image.push_back(col[0]);
    CHECK(ideal_equal(make_ideal(ctx, image), I4));
}

TEST_CASE("bracket_image") {
    RingContext ctx = make_context(2, {"x", "y"});
    SubmoduleSpec empty;
    CHECK(bracket_image(ctx, empty, 1).gens.empty());

    SubmoduleSpec N;
    N.gens = {vec(ctx, {"x", "y"})};
    SubmoduleSpec N1 = bracket_image(ctx, N, 1);
    CHECK(N1.gens[0].coords[0] == parse_polynomial(ctx, "x^2"));
    CHECK(N1.gens[0].coords[1] == parse_polynomial(ctx, "y^2"));
}

TEST_CASE("module membership") {
    RingContext ctx = make_context(2, {"x", "y"});
    PresentedModule M = free_module(2);
    SubmoduleSpec N;
    N.gens = {vec(ctx, {"x", "0"}), vec(ctx, {"0", "y"})};

    CHECK(module_membership(ctx, N.gens[0], N, M));
    CHECK_FALSE(module_membership(ctx, vec(ctx, {"y", "0"}), N, M));
    CHECK(module_membership(ctx, vec(ctx, {"0", "0"}), N, M));

    // a relation column of M is zero in M
    PresentedModule Mrel = M;
    Mrel.relations = {{parse_polynomial(ctx, "y"), parse_polynomial(ctx, "x")}};
    CHECK(module_membership(ctx, vec(ctx, {"y", "x"}), N, Mrel));
}

TEST_CASE("module GB reduces its input to zero") {
    RingContext ctx = cone(2);
    PresentedModule M = free_module(2);
    M.relations = {{parse_polynomial(ctx, "y"), parse_polynomial(ctx, "x")}};
    M.graded = false;
    SubmoduleSpec N;
    N.gens = {vec(ctx, {"x^2", "y*z"}), vec(ctx, {"z", "0"})};
    ModuleGB gb = module_groebner(ctx, N, M);
    for (const auto& g : N.gens) {
        ModuleDivision d = module_divide(ctx, g, gb.basis, gb.term_order);
        bool zero = true;
        for (const auto& c : d.remainder.coords) zero = zero && c.is_zero();
        CHECK(zero);
    }
}

TEST_CASE("module Frobenius closure agrees with the ideal route") {
    RingContext R = cone(2);
    PresentedModule M = free_module(1); // cyclic R
    M.graded = false;
    SubmoduleSpec N;
    N.gens = {vec(R, {"y"}), vec(R, {"z"})};

    auto direct = module_frobenius_closure_membership(R, vec(R, {"x^2"}), N, M, 2);
    REQUIRE(direct.has_value());
    CHECK(direct->e == 1);
    auto ideal_route = frobenius_closure_membership(
        parse_polynomial(R, "x^2"), make_ideal(R, std::vector<std::string>{"y", "z"}), 2);
    REQUIRE(ideal_route.has_value());
    CHECK(direct->e == ideal_route->e);

    auto e0 = module_frobenius_closure_membership(R, vec(R, {"z"}), N, M, 2);
    REQUIRE(e0.has_value());
    CHECK(e0->e == 0);

    // regular ambient ring: nothing new enters
    RingContext reg = make_context(2, {"x", "y"});
    PresentedModule F = free_module(1);
    F.graded = false;
    SubmoduleSpec Nx;
    Nx.gens = {vec(reg, {"x"})};
    CHECK_FALSE(module_frobenius_closure_membership(reg, vec(reg, {"y"}), Nx, F, 3)
                    .has_value());
}

TEST_CASE("is_m_coprimary") {
    RingContext reg = make_context(2, {"x", "y"});
    PresentedModule F = free_module(1);
    F.graded = false;

    SubmoduleSpec mN;
    mN.gens = {vec(reg, {"x"}), vec(reg, {"y"})};
    CoprimaryResult r1 = is_m_coprimary(reg, F, mN);
    CHECK(r1.verdict == Trilean::True);
    CHECK(r1.n == 1u);

    SubmoduleSpec Nx;
    Nx.gens = {vec(reg, {"x"})};
    CHECK(is_m_coprimary(reg, F, Nx).verdict == Trilean::False);

    RingContext R = cone(2);
    PresentedModule C = free_module(1);
    C.graded = false;
    SubmoduleSpec Nyz;
    Nyz.gens = {vec(R, {"y"}), vec(R, {"z"})};
    CoprimaryResult r3 = is_m_coprimary(R, C, Nyz);
    CHECK(r3.verdict == Trilean::True);
    CHECK(r3.n == 3u); // x^3 = y^3 + z^3, and m^2 is not inside (y,z)
}

TEST_CASE("graded_dual_dimensions") {
    RingContext one = make_context(2, {"x"});
    auto d1 = graded_dual_dimensions(one, 1, 2);
    CHECK(d1 == std::vector<std::pair<unsigned, unsigned>>{{0, 1}, {1, 1}});

    auto d2 = graded_dual_dimensions(one, 2, 1); // basis 1, x^{1/2}
    CHECK(d2 == std::vector<std::pair<unsigned, unsigned>>{{0, 1}, {1, 1}});

    RingContext two = make_context(2, {"x", "y"});
    auto d3 = graded_dual_dimensions(two, 2, 2);
    unsigned long long total = 0;
    for (auto [j, dim] : d3) total += dim;
    // independent oracle: (a1, a2) in [0,4)^2 with floor(a1/2)+floor(a2/2) < 2
    unsigned long long expected = 0;
    for (unsigned a1 = 0; a1 < 4; ++a1)
        for (unsigned a2 = 0; a2 < 4; ++a2)
            if (a1 / 2 + a2 / 2 < 2) ++expected;
    CHECK(total == expected);

    CHECK_THROWS_AS(graded_dual_dimensions(two, 3, 1), PreconditionError); // q not p-power
    CHECK_THROWS_AS(graded_dual_dimensions(cone(2), 2, 1), PreconditionError);
}

TEST_CASE("print_module_element") {
    RingContext ctx = make_context(2, {"x", "y"});
    CHECK(print_module_element(ctx, vec(ctx, {"x", "0"})) == "(x, 0)");
}
