#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "stabcalc/decoration.hpp"
#include "stabcalc/delta.hpp"
#include "stabcalc/xidata.hpp"

namespace stabcalc {

/*
 * Pullback of psi-class expressions along the forgetful map
 * M_{g,m+n} -> M_{g,m}, two ways:
 *
 *  - the closed form  pi*G = G(L) + sum_a O_{D_a} delta(G(L_1 - F_1, ...)),
 *    one term per decoration, delta taken over the normal-bundle variables
 *    with the L_i constant;
 *
 *  - an iterated oracle that factors pi into one-point forgetful maps and
 *    pulls every generator back step by step, expanding stratum classes by
 *    inclusion-exclusion over the irreducible preimage strata.
 *
 * Both land in the same canonical form, for every forget order.
 */

struct PullbackProblem {
    int g = 0; // bookkeeping only; the formulas do not depend on it
    int m = 1;
    int n = 0;
    KExpr G; // in L1..Lm, polynomial or truncated series
};

struct PullbackTerm {
    Decoration stratum;
    KExpr coefficient;
};

struct ClosedPullback {
    std::vector<PullbackTerm> terms; // per-decoration, empty stratum first
    KExpr total;                     // canonical form of the full sum
};

ClosedPullback pullback_closed(const PullbackProblem& p);

// One-point forgetful pullback of a whole expression: every L_i becomes
// L_i - O_{D_{i q}} and every stratum class expands over its preimage
// strata, classified by forgetful_image_stable.
KExpr forget_one_point(const KExpr& e, int q, int m, int ambient_points);

KExpr pullback_oracle(const PullbackProblem& p, const std::vector<int>& forget_order);

// Coefficient of O_{D_{1,a}} in pi*G for m = 1, via the coefficient lemma's
// own process: the F-polynomial is rebuilt from the signed sum over
// subchains of the divisor chain (independent of the descent-block form).
KExpr coeff_stratum(const PullbackProblem& p, const Decoration& a);

// pi* of exp(t sum_i r_i L_i) truncated at order N in the series variable
// t. `factorization_ok` records whether every stratum coefficient equals
// the product of its per-leg delta factors.
struct ExpPullback {
    ClosedPullback closed;
    bool factorization_ok;
};
ExpPullback pullback_exp(int m, int n, const std::vector<Rat>& weights, int order);

// ---- ramified covers ---------------------------------------------------------

// Edge multiplicity assignment: multiplicity of the node at position `node`
// (1-based) of the chain at `leg`, for the given stratum.
using EdgeMultiplicity = std::function<int(const Decoration&, int leg, int node)>;

EdgeMultiplicity unit_edge_multiplicity();
EdgeMultiplicity constant_edge_multiplicity(int mult);

// Pullback along the map p for a cover with discrete data Xi: the leading
// term raises each L_i to m(t_i) and the correction F-polynomials take
// powered variables per the edge multiplicities. The cover dual graphs are
// not enumerated; strata are modeled as decorations on R legs and n
// forgotten points with multiplicities supplied by the caller, so n is an
// explicit field (when xi is present, xi's forgotten count A is the
// canonical choice).
struct RamifiedProblem {
    std::optional<XiData> xi;
    int R = 1;
    int n = 0;
    KExpr G; // in M1..MR
    std::vector<int> leg_multiplicities; // m(t_i), size R, all >= 1
    EdgeMultiplicity edge_multiplicity = unit_edge_multiplicity();
};

ClosedPullback ramified_pullback(const RamifiedProblem& p);

// Rewrites upstairs psi classes into base ones: every L_i with i in the
// fiber map becomes L_{fiber_map(i)}. Unmapped upstairs legs occurring in
// the expression raise domain_error.
KExpr symmetrize_to_base(const KExpr& e, const std::map<int, int>& fiber_map);

} // namespace stabcalc
