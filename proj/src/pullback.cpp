#include "stabcalc/pullback.hpp"

#include <algorithm>
#include <set>

namespace stabcalc {

namespace {

bool is_leg_label(const std::string& label, char prefix, int* index = nullptr) {
    if (label.size() < 2 || label[0] != prefix) return false;
    for (std::size_t i = 1; i < label.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(label[i]))) return false;
    if (index) *index = std::atoi(label.c_str() + 1);
    return true;
}

void validate_insertion(const KExpr& G, int m, char prefix) {
    for (const auto& g : G.generators()) {
        if (g.kind == GenKind::SeriesVar) continue;
        int idx = 0;
        if (g.kind == GenKind::LineBundle && is_leg_label(g.label, prefix, &idx) && idx >= 1 &&
            idx <= m)
            continue;
        throw precondition_error("pullback input may only use " + std::string(1, prefix) +
                                 "1.." + std::string(1, prefix) + std::to_string(m) +
                                 " and series variables; found " + g.label);
    }
}

} // namespace

ClosedPullback pullback_closed(const PullbackProblem& p) {
    if (p.m < 1 || p.n < 0) throw precondition_error("pullback needs m >= 1, n >= 0");
    validate_insertion(p.G, p.m, 'L');

    ClosedPullback out;
    out.total = KExpr().with_truncation(p.G.truncation());
    for (const auto& dec : enumerate_decorations(p.m, p.n, p.n)) {
        std::map<Generator, KExpr> bindings;
        std::vector<Generator> all_vars;
        for (std::size_t i = 0; i < dec.legs.size(); ++i) {
            const LegDecoration& leg = dec.legs[i];
            if (leg.empty()) continue;
            std::vector<Generator> vars;
            for (int j = 1; j <= leg.degree(); ++j)
                vars.push_back(node_bundle(static_cast<int>(i + 1), j));
            KExpr F = F_polynomial(leg, vars);
            Generator Li = psi(static_cast<int>(i + 1));
            bindings.emplace(Li, KExpr::gen(Li).sub(F));
            all_vars.insert(all_vars.end(), vars.begin(), vars.end());
        }
        KExpr coeff = delta(bindings.empty() ? p.G : p.G.substitute(bindings), all_vars);
        out.total = out.total.add(stratum_class_expr(dec).mul(coeff));
        out.terms.push_back({dec, coeff});
    }
    out.total = canonicalize(out.total);
    return out;
}

KExpr forget_one_point(const KExpr& e, int q, int m, int ambient_points) {
    std::map<Generator, KExpr> bindings;
    for (const auto& g : e.generators()) {
        if (g.kind == GenKind::LineBundle) {
            int idx = 0;
            if (is_leg_label(g.label, 'L', &idx) && idx >= 1 && idx <= m) {
                Decoration dq;
                dq.m = m;
                dq.n = ambient_points - m;
                dq.legs.assign(static_cast<std::size_t>(m), LegDecoration{});
                dq.legs[static_cast<std::size_t>(idx - 1)].groups = {{q}};
                bindings.emplace(g, KExpr::gen(g).sub(stratum_class_expr(dq)));
            }
        } else if (g.kind == GenKind::StratumTorsion && is_stratum_label(g.label)) {
            Decoration dec = decoration_from_stratum_label(g.label);
            dec.m = m;
            dec.n = ambient_points - m;
            dec.legs.resize(static_cast<std::size_t>(m));
            // Preimage strata of the forgetful map: q sits on the main
            // component (the stratum itself), or on any tail component
            // (q joins that group), minus the loci where two components
            // meet (q alone on a new tail between consecutive nodes, or
            // between the outermost node and the main component). A new
            // innermost tail below group 1 lies inside the q-joins-group-1
            // component and does not enter the inclusion-exclusion.
            KExpr image = stratum_class_expr(dec);
            for (std::size_t li = 0; li < dec.legs.size(); ++li) {
                const LegDecoration& leg = dec.legs[li];
                for (int j = 0; j < leg.degree(); ++j) {
                    Decoration comp = dec;
                    auto& cg = comp.legs[li].groups[static_cast<std::size_t>(j)];
                    cg.insert(std::lower_bound(cg.begin(), cg.end(), q), q);
                    Decoration inter = dec;
                    auto& ig = inter.legs[li].groups;
                    ig.insert(ig.begin() + j + 1, std::vector<int>{q});
                    bool comp_stable =
                        forgetful_image_stable(StratumClass{comp}, q, 0, ambient_points);
                    bool inter_stable =
                        forgetful_image_stable(StratumClass{inter}, q, 0, ambient_points);
                    if (!comp_stable || inter_stable)
                        throw internal_error("stability bookkeeping disagrees with the "
                                             "preimage decomposition");
                    image = image.add(stratum_class_expr(comp));
                    image = image.sub(stratum_class_expr(inter));
                }
            }
            bindings.emplace(g, image);
        }
    }
    return bindings.empty() ? e : e.substitute(bindings);
}

KExpr pullback_oracle(const PullbackProblem& p, const std::vector<int>& forget_order) {
    if (p.m < 1 || p.n < 0) throw precondition_error("pullback needs m >= 1, n >= 0");
    validate_insertion(p.G, p.m, 'L');
    std::vector<int> expected;
    for (int a = p.m + 1; a <= p.m + p.n; ++a) expected.push_back(a);
    std::vector<int> sorted = forget_order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != expected)
        throw precondition_error("forget order must be a permutation of the forgotten labels");

    KExpr expr = p.G;
    for (int q : forget_order) expr = forget_one_point(expr, q, p.m, p.m + p.n);
    return canonicalize(expr);
}

KExpr coeff_stratum(const PullbackProblem& p, const Decoration& a) {
    if (p.m != 1) throw precondition_error("coeff_stratum is stated for m = 1");
    validate_insertion(p.G, p.m, 'L');
    a.validate();
    if (a.empty()) return p.G;
    const LegDecoration& leg = a.legs[0];
    std::vector<Generator> vars;
    for (int j = 1; j <= leg.degree(); ++j) vars.push_back(node_bundle(1, j));
    KExpr F = F_polynomial_by_subchains(leg, vars);
    Generator L1 = psi(1);
    KExpr sub = p.G.substitute({{L1, KExpr::gen(L1).sub(F)}});
    return delta(sub, vars);
}

// ---- exponential series --------------------------------------------------------

static KExpr exp_truncated(const KExpr& x, int order) {
    // x must have positive series degree in every monomial for this to
    // terminate; callers pass multiples of the series variable t.
    for (const auto& [m, c] : x.terms())
        if (m.series_degree() < 1)
            throw precondition_error("exp argument needs series degree >= 1 per term");
    KExpr sum = KExpr::constant(1).with_truncation(order);
    KExpr power = KExpr::constant(1).with_truncation(order);
    Rat fact = 1;
    for (int d = 1; d <= order; ++d) {
        power = power.mul(x);
        fact *= d;
        sum = sum.add(power.scale(Rat(1) / fact));
    }
    return sum;
}

ExpPullback pullback_exp(int m, int n, const std::vector<Rat>& weights, int order) {
    if (static_cast<int>(weights.size()) != m)
        throw arity_error("pullback_exp needs one weight per retained point");
    if (order < 0) throw precondition_error("negative truncation order");
    Generator t = series_var("t");
    KExpr arg;
    for (int i = 1; i <= m; ++i)
        arg = arg.add(KExpr::gen(psi(i)).scale(weights[static_cast<std::size_t>(i - 1)]));
    arg = arg.mul(KExpr::gen(t)).with_truncation(order);
    KExpr G = arg.is_zero() ? KExpr::constant(1).with_truncation(order) : exp_truncated(arg, order);

    ExpPullback out{pullback_closed({0, m, n, G}), true};

    // Per-stratum coefficients factor leg by leg.
    for (const auto& term : out.closed.terms) {
        KExpr expected = KExpr::constant(1).with_truncation(order);
        for (std::size_t i = 0; i < term.stratum.legs.size(); ++i) {
            const LegDecoration& leg = term.stratum.legs[i];
            const Rat& r = weights[i];
            KExpr leg_arg = KExpr::gen(psi(static_cast<int>(i + 1)));
            std::vector<Generator> vars;
            if (!leg.empty()) {
                for (int j = 1; j <= leg.degree(); ++j)
                    vars.push_back(node_bundle(static_cast<int>(i + 1), j));
                leg_arg = leg_arg.sub(F_polynomial(leg, vars));
            }
            leg_arg = leg_arg.scale(r).mul(KExpr::gen(t)).with_truncation(order);
            KExpr factor = leg_arg.is_zero() ? KExpr::constant(1).with_truncation(order)
                                             : exp_truncated(leg_arg, order);
            expected = expected.mul(delta(factor, vars));
        }
        if (!(expected == term.coefficient)) out.factorization_ok = false;
    }
    return out;
}

// ---- ramified covers ------------------------------------------------------------

EdgeMultiplicity unit_edge_multiplicity() {
    return [](const Decoration&, int, int) { return 1; };
}

EdgeMultiplicity constant_edge_multiplicity(int mult) {
    return [mult](const Decoration&, int, int) { return mult; };
}

ClosedPullback ramified_pullback(const RamifiedProblem& p) {
    if (p.R < 1 || p.n < 0) throw precondition_error("ramified pullback needs R >= 1, n >= 0");
    if (static_cast<int>(p.leg_multiplicities.size()) != p.R)
        throw arity_error("one leg multiplicity per retained point required");
    for (int mult : p.leg_multiplicities)
        if (mult < 1) throw precondition_error("leg multiplicities must be >= 1");
    if (p.xi && p.xi->R() != p.R)
        throw precondition_error("R does not match the discrete data");
    validate_insertion(p.G, p.R, 'M');

    ClosedPullback out;
    out.total = KExpr().with_truncation(p.G.truncation());
    for (const auto& dec : enumerate_decorations(p.R, p.n, p.n)) {
        std::map<Generator, KExpr> bindings;
        std::vector<Generator> all_vars;
        for (std::size_t i = 0; i < dec.legs.size(); ++i) {
            const LegDecoration& leg = dec.legs[i];
            int leg_index = static_cast<int>(i + 1);
            KExpr upstairs =
                KExpr::gen(psi(leg_index), p.leg_multiplicities[i]); // L_i^{m(t_i)}
            if (!leg.empty()) {
                std::vector<Generator> vars;
                std::vector<int> powers;
                for (int j = 1; j <= leg.degree(); ++j) {
                    vars.push_back(node_bundle(leg_index, j));
                    int e = p.edge_multiplicity(dec, leg_index, j);
                    if (e < 1) throw precondition_error("edge multiplicities must be >= 1");
                    powers.push_back(e);
                }
                upstairs = upstairs.sub(F_polynomial(leg, vars, powers));
                all_vars.insert(all_vars.end(), vars.begin(), vars.end());
            }
            bindings.emplace(psi_down(leg_index), upstairs);
        }
        KExpr coeff = delta(p.G.substitute(bindings), all_vars);
        out.total = out.total.add(stratum_class_expr(dec).mul(coeff));
        out.terms.push_back({dec, coeff});
    }
    out.total = canonicalize(out.total);
    return out;
}

KExpr symmetrize_to_base(const KExpr& e, const std::map<int, int>& fiber_map) {
    KExpr out;
    out = out.with_truncation(e.truncation());
    for (const auto& [mono, coeff] : e.terms()) {
        KExpr piece = KExpr::constant(coeff);
        for (const auto& [g, exp] : mono.factors()) {
            int idx = 0;
            if (g.kind == GenKind::LineBundle && is_leg_label(g.label, 'L', &idx)) {
                auto it = fiber_map.find(idx);
                if (it == fiber_map.end())
                    throw domain_error("fiber map does not cover upstairs leg " + g.label);
                piece = piece.mul(KExpr::gen(psi(it->second), exp));
            } else {
                piece = piece.mul(KExpr::gen(g, exp));
            }
        }
        out = out.add(piece);
    }
    return out;
}

} // namespace stabcalc
