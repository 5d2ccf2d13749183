#pragma once

#include <string>
#include <vector>

#include "stabcalc/errors.hpp"
#include "stabcalc/rational.hpp"

#include <nlohmann/json_fwd.hpp>

namespace stabcalc {

/*
 * The discrete data of a ramified cover C' -> C: genus g of C', degree
 * d = g + 1, a set J of unramified marked points, k simply ramified ones,
 * and the ramification profile gamma over infinity. Everything else
 * (marked-point counts n and ell, gerbe orders, the forgotten set A, the
 * torsor degree e) is derived.
 */
struct XiData {
    int g = 0;
    int d = 1;
    int J_size = 0;
    int k = 0;
    std::vector<int> gamma; // ramification orders over infinity, one per point of I

    int I_size() const { return static_cast<int>(gamma.size()); }
    int n() const { return J_size + k + 1; }
    int ell() const { return J_size * (g + 1) + k * g + I_size(); }
    int R() const { return I_size() + J_size; }
    int A_size() const { return ell() - R(); }
    long r_infinity() const;
    // gerbe order at marked point j of C: 1 on J, 2 on the k simple points
    int r_at(int j) const;
};

struct XiCheck {
    std::string name;
    bool pass;
    std::string detail;
};

struct XiReport {
    std::vector<XiCheck> checks;
    bool all_pass() const;
};

// Checks every structural invariant of the data: d = g + 1, the fiber
// degree over infinity, Riemann-Hurwitz, the partition counts, and the
// monodromy-sign parity (a necessary condition only; Hurwitz existence is
// not decided and is reported as such).
XiReport validate_xi(const XiData& x);

// k = #I + 3g - 1, the unique simple-ramification count matching the
// dimension of the downstairs moduli. Throws infeasible_error when negative.
int k_from_dims(int g, int I_size);

// Degree of the torsor p, e = k! (g!)^{#J} (g!)^k.
Int degree_e(const XiData& x);

// Order of the reordering group Gamma = (S_g)^J x (S_g wr S_k), computed
// from the group structure; must agree with degree_e.
Int gamma_group_order(const XiData& x);

nlohmann::json xi_to_json(const XiData& x);
nlohmann::json xi_report_to_json(const XiReport& r);

} // namespace stabcalc
