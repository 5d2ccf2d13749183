#pragma once

#include <vector>

#include "stabcalc/kexpr.hpp"

namespace stabcalc {

/*
 * The difference operator
 *
 *   delta(F) = [ F - sum_i F|_{x_i=1} + sum_{i<j} F|_{x_i=x_j=1} - ...
 *                ... + (-1)^n F|_{all = 1} ] / prod_i (1 - x_i)
 *
 * acting on the listed active variables only; every other generator is a
 * constant. The alternating numerator vanishes at each x_i = 1, so the
 * division is exact; the quotient is verified by remainder check.
 */

struct DeltaRequest {
    KExpr expr;
    std::vector<Generator> active_vars;
};

KExpr delta(const DeltaRequest& req);
KExpr delta(const KExpr& expr, const std::vector<Generator>& vars);

// Checks the factorization law delta(prod F_i) = prod delta(F_i) for factors
// with pairwise-disjoint active variable sets. Throws precondition_error on
// overlapping sets.
bool delta_factor_law(const std::vector<DeltaRequest>& factors);

// Exact division q = e / (1 - x); throws internal_error when the remainder
// is nonzero.
KExpr divide_by_one_minus(const KExpr& e, const Generator& x);

} // namespace stabcalc
