// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. The same checks back the CLI's verify-all subcommand.
#include <iostream>

#include "encoderlab/verify.hpp"

int main() {
    auto results = encoderlab::run_acceptance(1, &std::cout);
    bool ok = true;
    double total = 0;
    for (const auto& r : results) {
        ok &= r.pass;
        total += r.seconds;
    }
    std::cout << (ok ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " (" << total << " s)\n";
    return ok ? 0 : 1;
}
