#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tckit/groebner.hpp"
#include "tckit/hull.hpp"
#include "tckit/modules.hpp"
#include "tckit/poly.hpp"

namespace tckit {

// Problem description file: a sequence of blocks
//   ring      { p = 2; vars = [x, y, z]; weights = [1, 1, 1];
//               quotient = ["x^3 + y^3 + z^3"]; }
//   ideal     { gens = ["y^2", "z^2"]; }
//   module    { shifts = [0, -1]; relations = [["x", "y"]]; }
//   submodule { gens = [["x^2", "0"]]; }
//   formalsum { arity = 2; text = "family(e){ x1^(-1/p^e) * x2^(-e) }"; }
// Later blocks may refer to the ring; the ring block must come first when any
// other block needs it. Parse errors carry line and column.
struct SpecFile {
    std::optional<RingContext> ring;
    std::optional<IdealSpec> ideal;
    std::optional<PresentedModule> module;
    std::optional<SubmoduleSpec> submodule;
    std::optional<FormalSum> formalsum;
};

SpecFile parse_specfile(const std::string& text);
SpecFile load_specfile(const std::string& path);

} // namespace tckit
