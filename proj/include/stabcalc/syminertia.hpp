#pragma once

#include <string>
#include <vector>

#include "stabcalc/errors.hpp"
#include "stabcalc/rational.hpp"

#include <nlohmann/json_fwd.hpp>

namespace stabcalc {

/*
 * Cycle-type combinatorics of Sym^d X. A cycle type is a partition of d;
 * it indexes a conjugacy class of S_d and a component of the inertia stack,
 * with fixed locus X^N (N = total number of cycles), automorphisms by the
 * centralizer prod_i S_{N_i} x (Z/i)^{N_i}, and coarse cover assembled in
 * Sym^N X.
 */

struct CycleType {
    int d = 0;
    // (cycle length i, count N_i), ascending in i, every N_i > 0
    std::vector<std::pair<int, int>> counts;

    int total_cycles() const; // N
    int distinct_lengths() const; // t
    std::vector<int> parts_descending() const;
    void validate() const;

    friend bool operator==(const CycleType&, const CycleType&) = default;
};

CycleType cycle_type_of(const std::vector<int>& one_line_permutation);
CycleType cycle_type_from_parts(int d, const std::vector<int>& parts);

// All partitions of d, reverse-lexicographic on the descending part lists
// (d first, 1+...+1 last).
std::vector<CycleType> partitions(int d);

// |C_g| = prod_i N_i! i^{N_i} = |S_d| / #conjugacy class.
Int centralizer_order(const CycleType& ct);

struct InertiaComponent {
    CycleType cycle_type;
    int fixed_locus_rank;                       // component is X^N
    std::vector<std::pair<int, int>> group_descriptor; // (i, N_i): factor S_{N_i} x (Z/i)^{N_i}
    Int centralizer;
    int coarse_target_rank;                     // assembled cover lands in Sym^N X
    std::vector<std::string> coarse_factors;    // per-length factors, descending length
};

std::vector<InertiaComponent> inertia_components(int d);

// Fiber of the d-sheeted cover over a mu_r gerbe point classified by sigma:
// each cycle of length l gives an orbit B mu_{r/l}; representable exactly
// when r is the lcm of the cycle lengths.
struct GerbeFiber {
    int r;
    std::vector<int> sigma; // one-line notation
    std::vector<std::pair<int, int>> orbits; // (orbit length l, stabilizer order r/l)
    int coarse_fiber_count;
    bool representable;
};

GerbeFiber gerbe_fiber(int r, const std::vector<int>& sigma);

// Cycle notation "(1 2)(3 4)" -> one-line; fixed points may be omitted.
std::vector<int> permutation_from_cycles(const std::string& text, int d);
long permutation_order(const std::vector<int>& sigma);

nlohmann::json cycle_type_to_json(const CycleType& ct);
nlohmann::json inertia_component_to_json(const InertiaComponent& c);
nlohmann::json gerbe_fiber_to_json(const GerbeFiber& f);

} // namespace stabcalc
