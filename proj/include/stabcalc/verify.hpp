#pragma once

#include <string>
#include <vector>

#include "stabcalc/rational.hpp"

namespace stabcalc {

// One acceptance criterion outcome. `detail` carries the measured values
// and any recorded notes (sign conventions, counts); it is part of the
// report, not just debugging text.
struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
    long elapsed_ms;
};

// Runs the full acceptance suite (criteria 1..11; the twelfth is the
// end-to-end run of this suite through the CLI).
std::vector<CriterionResult> run_acceptance();

// Brute-force helpers backing the combinatorial criteria.
std::vector<std::vector<int>> all_permutations(int d);
Int brute_force_centralizer_order(const std::vector<int>& sigma);

} // namespace stabcalc
