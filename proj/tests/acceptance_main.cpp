// Acceptance gate: runs every criterion and prints one line per result.
// Criterion 12 (the CLI end-to-end run under its time budget) executes the
// installed binary when its path is passed as argv[1].

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "stabcalc/verify.hpp"

int main(int argc, char** argv) {
    using Clock = std::chrono::steady_clock;
    auto start = Clock::now();
    auto results = stabcalc::run_acceptance();
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << " ("
                  << r.elapsed_ms << " ms): " << r.detail << "\n";
        all = all && r.pass;
    }

    bool c12 = true;
    if (argc > 1) {
        auto cli_start = Clock::now();
        std::string cmd = std::string(argv[1]) + " verify-all > /dev/null 2>&1";
        int rc = std::system(cmd.c_str());
        long ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - cli_start)
                      .count();
        c12 = (rc == 0) && ms < 120000;
        std::cout << (c12 ? "[PASS] " : "[FAIL] ") << "12. verify-all end to end (" << ms
                  << " ms): exit " << (rc == 0 ? "0" : "nonzero") << "\n";
    } else {
        long total = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
                         .count();
        c12 = all && total < 120000;
        std::cout << (c12 ? "[PASS] " : "[FAIL] ") << "12. suite end to end (" << total
                  << " ms)\n";
    }
    return (all && c12) ? 0 : 1;
}
