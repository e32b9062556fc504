// Acceptance gate: runs every verification criterion with its pinned
// threshold and prints one PASS/FAIL line per criterion. Exit status is
// nonzero if any gating criterion fails.
#include <iostream>

#include "degen/verify.hpp"

int main() {
    const auto results = degen::run_verification(degen::VerifySuite::all);
    degen::print_report(results, std::cout);
    int gating = 0, passed = 0;
    for (const auto& r : results) {
        if (r.informational) continue;
        ++gating;
        if (r.pass) ++passed;
    }
    std::cout << passed << "/" << gating << " acceptance criteria passed\n";
    return degen::all_passed(results) ? 0 : 1;
}
