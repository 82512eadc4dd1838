// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.
#include <iostream>

#include "tckit/selftest.hpp"

int main() {
    tckit::AcceptanceReport rep = tckit::run_acceptance(&std::cout);
    return rep.all_pass() ? 0 : 1;
}
