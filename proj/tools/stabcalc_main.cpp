// Batch front end: every subcommand reads its inputs, runs the library
// operations, and prints a deterministic JSON run report to stdout. Exit
// code 0 when all checks pass, 1 on a failed check, 2 on usage errors.

#include <chrono>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "stabcalc/decoration.hpp"
#include "stabcalc/delta.hpp"
#include "stabcalc/dispatch.hpp"
#include "stabcalc/molien.hpp"
#include "stabcalc/pullback.hpp"
#include "stabcalc/syminertia.hpp"
#include "stabcalc/verify.hpp"
#include "stabcalc/xidata.hpp"

using nlohmann::json;
using namespace stabcalc;

namespace {

struct Report {
    json inputs = json::object();
    json outputs = json::object();
    json checks = json::array();
    bool human = false;
    bool stable = false;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void check(const std::string& name, bool pass, const std::string& expected,
               const std::string& actual) {
        checks.push_back(
            {{"name", name}, {"pass", pass}, {"expected", expected}, {"actual", actual}});
    }

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.at("pass").get<bool>()) return false;
        return true;
    }

    int finish(const std::string& command) {
        long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        json report{{"command", command},
                    {"inputs", inputs},
                    {"outputs", outputs},
                    {"checks", checks},
                    {"elapsed_ms", stable ? 0 : ms}};
        std::cout << report.dump(human ? 2 : -1) << "\n";
        return all_pass() ? 0 : 1;
    }
};

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::atoi(item.c_str()));
    return out;
}

std::vector<Rat> parse_rat_list(const std::string& s) {
    std::vector<Rat> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(rat_from_string(item));
    return out;
}

json terms_to_json(const std::vector<PullbackTerm>& terms) {
    json arr = json::array();
    for (const auto& t : terms)
        arr.push_back({{"stratum", decoration_to_text(t.stratum)},
                       {"codim", t.stratum.codim()},
                       {"coefficient", serialize(t.coefficient)}});
    return arr;
}

int cmd_pullback(Report& rep, int g, int m, int n, const std::string& gtext,
                 const std::string& order_text, bool oracle, bool coeffs, bool exp_mode,
                 const std::string& weights_text, int trunc, bool ramified,
                 const std::string& leg_mults_text, int edge_mult,
                 const std::string& fiber_map_text) {
    rep.inputs = {{"g", g}, {"m", m}, {"n", n}, {"G", gtext}};

    if (exp_mode) {
        auto weights = parse_rat_list(weights_text.empty() ? "1" : weights_text);
        rep.inputs["weights"] = weights_text;
        rep.inputs["truncation"] = trunc;
        ExpPullback ep = pullback_exp(m, n, weights, trunc);
        rep.outputs["closed"] = serialize(ep.closed.total);
        if (coeffs) rep.outputs["strata"] = terms_to_json(ep.closed.terms);
        rep.check("per_stratum_delta_factorization", ep.factorization_ok, "true",
                  ep.factorization_ok ? "true" : "false");
        return rep.finish("pullback");
    }

    if (ramified) {
        RamifiedProblem rp;
        rp.R = m;
        rp.n = n;
        rp.G = deserialize(gtext);
        rp.leg_multiplicities = leg_mults_text.empty()
                                    ? std::vector<int>(static_cast<std::size_t>(m), 1)
                                    : parse_int_list(leg_mults_text);
        rp.edge_multiplicity = constant_edge_multiplicity(edge_mult);
        rep.inputs["leg_multiplicities"] = rp.leg_multiplicities;
        rep.inputs["edge_multiplicity"] = edge_mult;
        ClosedPullback cp = ramified_pullback(rp);
        rep.outputs["closed"] = serialize(cp.total);
        if (coeffs) rep.outputs["strata"] = terms_to_json(cp.terms);
        if (!fiber_map_text.empty()) {
            std::map<int, int> fm;
            std::stringstream ss(fiber_map_text);
            std::string item;
            while (std::getline(ss, item, ',')) {
                auto eq = item.find('=');
                if (eq == std::string::npos) throw CLI::ValidationError("--fiber-map", "use i=j pairs");
                fm[std::atoi(item.substr(0, eq).c_str())] =
                    std::atoi(item.substr(eq + 1).c_str());
            }
            rep.inputs["fiber_map"] = fiber_map_text;
            rep.outputs["symmetrized"] = serialize(symmetrize_to_base(cp.total, fm));
        }
        bool unit = true;
        for (int mu : rp.leg_multiplicities) unit = unit && mu == 1;
        if (unit && edge_mult == 1) {
            // sanity cross-check against the unramified closed form
            std::string base = gtext;
            for (auto& c : base)
                if (c == 'M') c = 'L';
            KExpr closed = pullback_closed({g, m, n, deserialize(base)}).total;
            rep.check("unit_multiplicities_match_closed", closed == cp.total, serialize(closed),
                      serialize(cp.total));
        }
        return rep.finish("pullback");
    }

    PullbackProblem p{g, m, n, deserialize(gtext)};
    ClosedPullback cp = pullback_closed(p);
    rep.outputs["closed"] = serialize(cp.total);
    if (coeffs) {
        rep.outputs["strata"] = terms_to_json(cp.terms);
        json lemma = json::array();
        if (m == 1)
            for (const auto& t : cp.terms)
                lemma.push_back({{"stratum", decoration_to_text(t.stratum)},
                                 {"coefficient", serialize(coeff_stratum(p, t.stratum))}});
        rep.outputs["coeff_lemma"] = lemma;
    }
    if (oracle) {
        std::vector<int> order;
        if (order_text.empty())
            for (int a = m + 1; a <= m + n; ++a) order.push_back(a);
        else
            order = parse_int_list(order_text);
        rep.inputs["order"] = order;
        KExpr got = pullback_oracle(p, order);
        rep.outputs["oracle"] = serialize(got);
        rep.outputs["match"] = (got == cp.total);
        rep.check("oracle_matches_closed", got == cp.total, serialize(cp.total), serialize(got));
    } else {
        rep.outputs["oracle"] = nullptr;
        rep.outputs["match"] = nullptr;
    }
    if (rep.human) {
        std::cerr << "pi*G = " << serialize(cp.total) << "\n";
    }
    return rep.finish("pullback");
}

int cmd_delta(Report& rep, const std::string& vars_text, const std::string& expr_text,
              const std::string& factors_text) {
    rep.inputs = {{"vars", vars_text}, {"expr", expr_text}};
    std::vector<Generator> vars;
    {
        std::stringstream ss(vars_text);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) vars.push_back(generator_from_label(item));
    }
    KExpr e = deserialize(expr_text);
    rep.outputs["delta"] = serialize(delta(e, vars));
    if (!factors_text.empty()) {
        // factors "expr1 ; expr2 ; ..." with variables split evenly is not
        // meaningful; each factor declares its own variables as "vars:expr"
        std::vector<DeltaRequest> reqs;
        std::stringstream ss(factors_text);
        std::string part;
        while (std::getline(ss, part, ';')) {
            auto colon = part.find(':');
            if (colon == std::string::npos)
                throw CLI::ValidationError("--factors", "use vars:expr;vars:expr");
            std::vector<Generator> fvars;
            std::stringstream vs(part.substr(0, colon));
            std::string v;
            while (std::getline(vs, v, ','))
                if (!v.empty()) fvars.push_back(generator_from_label(v));
            reqs.push_back({deserialize(part.substr(colon + 1)), fvars});
        }
        rep.inputs["factors"] = factors_text;
        bool ok = delta_factor_law(reqs);
        rep.check("delta_factorizes", ok, "true", ok ? "true" : "false");
    }
    return rep.finish("delta");
}

int cmd_decorations(Report& rep, int m, int n, int max_codim, int forget,
                    const std::string& product_text) {
    rep.inputs = {{"m", m}, {"n", n}, {"max_codim", max_codim}};
    auto decs = enumerate_decorations(m, n, max_codim);
    json arr = json::array();
    for (const auto& d : decs) {
        json entry = decoration_to_json(d);
        if (!d.empty()) {
            json types = json::array();
            for (const auto& leg : d.legs) {
                if (leg.empty()) {
                    types.push_back(nullptr);
                    continue;
                }
                DecorationType t = decoration_type(leg);
                types.push_back(t.type0 ? json("type0") : json(t.blocks_start));
            }
            entry["leg_types"] = types;
            StratumClass s{d};
            json fs = json::array();
            for (std::size_t i = 0; i < d.legs.size(); ++i) {
                if (d.legs[i].empty()) {
                    fs.push_back(nullptr);
                    continue;
                }
                std::vector<Generator> vars;
                for (int j = 1; j <= d.legs[i].degree(); ++j)
                    vars.push_back(node_bundle(static_cast<int>(i) + 1, j));
                fs.push_back(serialize(F_polynomial(d.legs[i], vars)));
            }
            entry["F"] = fs;
            if (forget > 0)
                entry["stable_after_forgetting"] =
                    forgetful_image_stable(s, forget, 0, m + n);
        }
        arr.push_back(entry);
    }
    rep.outputs["count"] = decs.size();
    rep.outputs["decorations"] = arr;
    if (forget > 0) rep.inputs["forget"] = forget;
    if (!product_text.empty()) {
        auto semi = product_text.find(';');
        if (semi == std::string::npos)
            throw CLI::ValidationError("--product", "use decoration;decoration");
        Decoration a = decoration_from_text(product_text.substr(0, semi), m, n);
        Decoration b = decoration_from_text(product_text.substr(semi + 1), m, n);
        rep.inputs["product"] = product_text;
        rep.outputs["product"] = serialize(strata_product(StratumClass{a}, StratumClass{b}));
    }
    return rep.finish("decorations");
}

int cmd_inertia(Report& rep, int d) {
    rep.inputs = {{"d", d}};
    json arr = json::array();
    for (const auto& c : inertia_components(d)) arr.push_back(inertia_component_to_json(c));
    rep.outputs["components"] = arr;
    rep.outputs["count"] = arr.size();
    if (rep.human) {
        for (const auto& c : inertia_components(d)) {
            std::cerr << "cycle type ";
            for (int p : c.cycle_type.parts_descending()) std::cerr << p << " ";
            std::cerr << "| fixed locus X^" << c.fixed_locus_rank << " | centralizer "
                      << c.centralizer.get_str() << " | coarse Sym^" << c.coarse_target_rank
                      << " X\n";
        }
    }
    return rep.finish("inertia");
}

int cmd_gerbe(Report& rep, int r, const std::string& sigma_text, int d) {
    rep.inputs = {{"r", r}, {"sigma", sigma_text}, {"d", d}};
    auto sigma = permutation_from_cycles(sigma_text, d);
    rep.outputs = gerbe_fiber_to_json(gerbe_fiber(r, sigma));
    return rep.finish("gerbe-fiber");
}

int cmd_xi(Report& rep, int g, int d, int J, int k, const std::string& gamma_text) {
    XiData x;
    x.g = g;
    x.d = d;
    x.J_size = J;
    x.gamma = parse_int_list(gamma_text);
    x.k = k >= 0 ? k : k_from_dims(g, x.I_size());
    rep.inputs = {{"g", g}, {"d", d}, {"J", J}, {"k", x.k}, {"gamma", x.gamma}};
    rep.outputs = xi_to_json(x);
    XiReport xr = validate_xi(x);
    for (const auto& c : xr.checks) rep.check(c.name, c.pass, "pass", c.detail);
    rep.outputs["gamma_group_order"] = gamma_group_order(x).get_str();
    rep.check("degree_equals_group_order", degree_e(x) == gamma_group_order(x),
              gamma_group_order(x).get_str(), degree_e(x).get_str());
    return rep.finish("xi");
}

int cmd_molien(Report& rep, const std::string& group, int max_degree,
               const std::string& compare_text, int sk_k, const std::string& sk_values) {
    rep.inputs = {{"group", group}, {"max_degree", max_degree}};
    auto coeffs = molien_series(named_matrix_group(group), max_degree);
    json carr = json::array();
    for (const auto& c : coeffs) carr.push_back(rat_to_string(c));
    rep.outputs["coeffs"] = carr;
    if (!compare_text.empty()) {
        rep.inputs["compare"] = compare_text;
        auto slash = compare_text.find('/');
        KExpr num = deserialize(slash == std::string::npos ? compare_text
                                                           : compare_text.substr(0, slash));
        KExpr den = slash == std::string::npos
                        ? KExpr::constant(1)
                        : deserialize(compare_text.substr(slash + 1));
        bool match = series_compare(coeffs, num, den, max_degree);
        rep.check("series_matches", match, compare_text, match ? "match" : "mismatch");
    }
    if (!sk_values.empty()) {
        VirtualCharacter chi;
        chi.k = sk_k;
        for (const auto& v : parse_rat_list(sk_values)) chi.values.push_back(v);
        rep.inputs["sk_k"] = sk_k;
        rep.inputs["sk_values"] = sk_values;
        rep.outputs["sk_invariant_multiplicity"] =
            rat_to_string(sk_invariant_multiplicity(chi));
    }
    return rep.finish("molien");
}

int cmd_verify_all(Report& rep) {
    auto results = run_acceptance();
    json arr = json::array();
    for (const auto& r : results) {
        std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << " ("
                  << r.elapsed_ms << " ms): " << r.detail << "\n";
        arr.push_back({{"id", r.id},
                       {"name", r.name},
                       {"pass", r.pass},
                       {"detail", r.detail},
                       {"elapsed_ms", rep.stable ? 0 : r.elapsed_ms}});
        rep.check("criterion_" + std::to_string(r.id), r.pass, "pass", r.detail);
    }
    rep.outputs["criteria"] = arr;
    return rep.finish("verify-all");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stabcalc: psi-class stabilization calculus and symmetric-product "
                 "inertia combinatorics"};
    app.require_subcommand(1);
    bool human = false, stable = false;
    app.add_flag("--human", human, "indent JSON and echo tables to stderr");
    app.add_flag("--stable-output", stable, "zero out timing fields for byte-stable output");

    // pullback
    auto* pc = app.add_subcommand("pullback", "pullback of psi-class expressions");
    int g = 0, m = 1, n = 0, trunc = 0, edge_mult = 1;
    std::string gtext = "L1", order_text, weights_text, leg_mults_text, fiber_map_text;
    bool oracle = false, coeffs = false, exp_mode = false, ramified = false;
    pc->add_option("--g", g, "genus (bookkeeping only)");
    pc->add_option("--m", m, "retained marked points");
    pc->add_option("--n", n, "forgotten marked points")->required();
    pc->add_option("--G", gtext, "insertion, e.g. \"L1\" or \"L1^2\"");
    pc->add_option("--order", order_text, "forget order, e.g. 3,2");
    pc->add_flag("--oracle", oracle, "also run the iterated one-point oracle");
    pc->add_flag("--coeffs", coeffs, "emit per-stratum coefficients");
    pc->add_flag("--exp", exp_mode, "pull back exp(t sum r_i L_i)");
    pc->add_option("--weights", weights_text, "rational weights for --exp");
    pc->add_option("--trunc", trunc, "series truncation order for --exp");
    pc->add_flag("--ramified", ramified, "ramified-cover pullback (insertion in M1..MR)");
    pc->add_option("--leg-mults", leg_mults_text, "m(t_i) per leg for --ramified");
    pc->add_option("--edge-mult", edge_mult, "constant edge multiplicity for --ramified");
    pc->add_option("--fiber-map", fiber_map_text, "upstairs=base pairs, e.g. 1=1,2=1");

    // delta
    auto* dc = app.add_subcommand("delta", "difference operator");
    std::string vars_text, expr_text, factors_text;
    dc->add_option("--vars", vars_text, "active variables, comma separated")->required();
    dc->add_option("--expr", expr_text, "expression")->required();
    dc->add_option("--factors", factors_text, "factor-law check: vars:expr;vars:expr");

    // decorations
    auto* ec = app.add_subcommand("decorations", "enumerate decorations and strata data");
    int em = 1, en = 0, emax = -1, eforget = 0;
    std::string product_text;
    ec->add_option("--m", em, "retained marked points");
    ec->add_option("--n", en, "forgotten marked points")->required();
    ec->add_option("--max-codim", emax, "codimension cap (default n)");
    ec->add_option("--forget", eforget, "report stability after forgetting this label");
    ec->add_option("--product", product_text, "stratum product: decoration;decoration");

    // inertia
    auto* ic = app.add_subcommand("inertia", "inertia components of Sym^d X");
    int d5 = 1;
    ic->add_option("--d", d5, "degree d")->required();

    // gerbe-fiber
    auto* gc = app.add_subcommand("gerbe-fiber", "fiber over a cyclic gerbe point");
    int gr = 1, gd = 0;
    std::string sigma_text;
    gc->add_option("--r", gr, "gerbe order")->required();
    gc->add_option("--sigma", sigma_text, "permutation in cycle notation")->required();
    gc->add_option("--d", gd, "degree d (default: largest entry)");

    // xi
    auto* xc = app.add_subcommand("xi", "validate discrete cover data");
    int xg = 0, xd = 1, xJ = 0, xk = -1;
    std::string gamma_text = "1";
    xc->add_option("--g", xg, "genus of the cover")->required();
    xc->add_option("--d", xd, "degree")->required();
    xc->add_option("--J", xJ, "number of unramified marked points");
    xc->add_option("--k", xk, "simple ramification count (default: from dimensions)");
    xc->add_option("--gamma", gamma_text, "ramification orders over infinity");

    // molien
    auto* mc = app.add_subcommand("molien", "Molien series and S_k characters");
    std::string group = "s3-standard", compare_text, sk_values;
    int max_degree = 10, sk_k = 3;
    mc->add_option("--group", group, "trivial2 | pm1 | s3-standard");
    mc->add_option("--max-degree", max_degree, "highest coefficient");
    mc->add_option("--compare", compare_text, "rational function, e.g. 1/((1-q^2)(1-q^3))");
    mc->add_option("--sk-k", sk_k, "k for a virtual S_k character");
    mc->add_option("--sk-values", sk_values,
                   "character values per cycle type, partitions(k) order");

    // verify-all
    app.add_subcommand("verify-all", "run the full acceptance suite");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    Report rep;
    rep.human = human;
    rep.stable = stable;
    try {
        if (app.got_subcommand("pullback"))
            return cmd_pullback(rep, g, m, n, gtext, order_text, oracle, coeffs, exp_mode,
                                weights_text, trunc, ramified, leg_mults_text, edge_mult,
                                fiber_map_text);
        if (app.got_subcommand("delta")) return cmd_delta(rep, vars_text, expr_text, factors_text);
        if (app.got_subcommand("decorations"))
            return cmd_decorations(rep, em, en, emax < 0 ? en : emax, eforget, product_text);
        if (app.got_subcommand("inertia")) return cmd_inertia(rep, d5);
        if (app.got_subcommand("gerbe-fiber")) {
            int dmax = gd;
            if (dmax == 0) { // default: the largest entry named in the cycles
                for (std::size_t i = 0; i < sigma_text.size();) {
                    if (std::isdigit(static_cast<unsigned char>(sigma_text[i]))) {
                        int v = 0;
                        while (i < sigma_text.size() &&
                               std::isdigit(static_cast<unsigned char>(sigma_text[i])))
                            v = 10 * v + (sigma_text[i++] - '0');
                        dmax = std::max(dmax, v);
                    } else {
                        ++i;
                    }
                }
            }
            return cmd_gerbe(rep, gr, sigma_text, dmax);
        }
        if (app.got_subcommand("xi")) return cmd_xi(rep, xg, xd, xJ, xk, gamma_text);
        if (app.got_subcommand("molien"))
            return cmd_molien(rep, group, max_degree, compare_text, sk_k, sk_values);
        if (app.got_subcommand("verify-all")) return cmd_verify_all(rep);
    } catch (const calc_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
