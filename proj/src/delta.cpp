#include "stabcalc/delta.hpp"

#include <algorithm>
#include <set>

namespace stabcalc {

KExpr divide_by_one_minus(const KExpr& e, const Generator& x) {
    // Write e = sum_k c_k x^k; then e / (1 - x) has x^k coefficient
    // sum_{j <= k} c_j, and exactness means the full sum of the c_k is zero.
    auto by_deg = e.collect(x);
    if (!by_deg.empty() && by_deg.begin()->first < 0)
        throw precondition_error("expression is not polynomial in " + x.label);
    int top = by_deg.empty() ? 0 : by_deg.rbegin()->first;
    KExpr quotient;
    quotient = quotient.with_truncation(e.truncation());
    KExpr running;
    running = running.with_truncation(e.truncation());
    for (int k = 0; k < top; ++k) {
        auto it = by_deg.find(k);
        if (it != by_deg.end()) running = running.add(it->second);
        quotient = quotient.add(running.mul(KExpr::gen(x, k)));
    }
    auto it = by_deg.find(top);
    KExpr remainder = running.add(it == by_deg.end() ? KExpr() : it->second);
    if (!remainder.is_zero())
        throw internal_error("non-exact division by (1 - " + x.label + ")");
    return quotient;
}

KExpr delta(const KExpr& expr, const std::vector<Generator>& vars) {
    {
        std::set<Generator> seen;
        for (const auto& v : vars)
            if (!seen.insert(v).second)
                throw precondition_error("duplicate active variable " + v.label);
    }
    for (const auto& v : vars)
        for (const auto& [m, c] : expr.terms())
            if (m.exponent_of(v) < 0)
                throw precondition_error("expression is not polynomial in " + v.label);

    int n = static_cast<int>(vars.size());
    if (n == 0) return expr;
    KExpr numerator;
    numerator = numerator.with_truncation(expr.truncation());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::map<Generator, KExpr> at_one;
        int bits = 0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                at_one.emplace(vars[static_cast<std::size_t>(i)], KExpr::constant(1));
                ++bits;
            }
        }
        KExpr piece = at_one.empty() ? expr : expr.substitute(at_one);
        numerator = numerator.add(bits % 2 == 0 ? piece : piece.neg());
    }
    KExpr q = numerator;
    for (const auto& v : vars) q = divide_by_one_minus(q, v);
    return q;
}

KExpr delta(const DeltaRequest& req) { return delta(req.expr, req.active_vars); }

bool delta_factor_law(const std::vector<DeltaRequest>& factors) {
    std::set<Generator> seen;
    for (const auto& f : factors) {
        for (const auto& v : f.active_vars)
            if (!seen.insert(v).second)
                throw precondition_error("overlapping active variable " + v.label);
    }
    KExpr product = KExpr::constant(1);
    std::vector<Generator> all_vars;
    KExpr rhs = KExpr::constant(1);
    for (const auto& f : factors) {
        product = product.mul(f.expr);
        all_vars.insert(all_vars.end(), f.active_vars.begin(), f.active_vars.end());
        rhs = rhs.mul(delta(f));
    }
    return delta(product, all_vars) == rhs;
}

} // namespace stabcalc
