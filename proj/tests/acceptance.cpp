// Acceptance suite: runs every criterion of the experiment grid and prints
// one pass/fail line per criterion.  Exit code 0 iff all pass.

#include <cstdio>

#include "heckelab/grid.hpp"

int main() {
    auto results = heckelab::run_all_criteria();
    bool ok = true;
    double total = 0;
    for (const auto& r : results) {
        std::printf("[%s] criterion %2d: %s -- %s [%.1fs]\n", r.passed ? "PASS" : "FAIL",
                    r.id, r.name.c_str(), r.detail.c_str(), r.seconds);
        ok = ok && r.passed;
        total += r.seconds;
    }
    std::printf("%s (%zu criteria, %.1fs)\n", ok ? "ALL CRITERIA PASS" : "FAILURES PRESENT",
                results.size(), total);
    return ok ? 0 : 1;
}
