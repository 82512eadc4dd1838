#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tckit {

struct AcceptanceItem {
    unsigned id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
};

struct AcceptanceReport {
    std::vector<AcceptanceItem> items;
    bool all_pass() const;
};

// Full acceptance suite; deterministic (fixed seeds). When progress is given,
// one line per item is printed as it finishes.
AcceptanceReport run_acceptance(std::ostream* progress = nullptr);

} // namespace tckit
