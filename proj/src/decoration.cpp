#include "stabcalc/decoration.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace stabcalc {

int max_forgotten_cap() {
    static int cap = [] {
        if (const char* s = std::getenv("STABCALC_MAX_N")) {
            int v = std::atoi(s);
            if (v > 0) return v;
        }
        return 6;
    }();
    return cap;
}

int max_codim_cap() {
    static int cap = [] {
        if (const char* s = std::getenv("STABCALC_MAX_CODIM")) {
            int v = std::atoi(s);
            if (v > 0) return v;
        }
        return 6;
    }();
    return cap;
}

std::vector<int> LegDecoration::labels() const {
    std::vector<int> out;
    for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
    return out;
}

int Decoration::codim() const {
    int c = 0;
    for (const auto& leg : legs) c += leg.degree();
    return c;
}

void Decoration::validate() const {
    if (m < 1 || n < 0) throw domain_error("decoration needs m >= 1, n >= 0");
    if (static_cast<int>(legs.size()) != m) throw domain_error("decoration has wrong leg count");
    std::set<int> seen;
    for (const auto& leg : legs) {
        for (const auto& g : leg.groups) {
            if (g.empty()) throw domain_error("empty group in decoration");
            for (std::size_t i = 0; i < g.size(); ++i) {
                int a = g[i];
                if (a <= m || a > m + n)
                    throw domain_error("decoration label " + std::to_string(a) + " out of range");
                if (!seen.insert(a).second)
                    throw domain_error("repeated label " + std::to_string(a) + " in decoration");
                if (i > 0 && g[i - 1] >= a)
                    throw domain_error("group labels must strictly increase");
            }
        }
    }
}

// ---- text format ------------------------------------------------------------

static std::string leg_to_text(const LegDecoration& leg) {
    if (leg.empty()) return "-";
    std::ostringstream out;
    for (const auto& g : leg.groups) {
        out << "(";
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (i) out << ",";
            out << g[i];
        }
        out << ")";
    }
    return out.str();
}

std::string decoration_to_text(const Decoration& d) {
    std::ostringstream out;
    for (std::size_t i = 0; i < d.legs.size(); ++i) {
        if (i) out << " | ";
        out << leg_to_text(d.legs[i]);
    }
    return out.str();
}

static LegDecoration leg_from_text(const std::string& s, std::size_t base_pos) {
    LegDecoration leg;
    std::size_t i = 0;
    auto skip = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
    skip();
    if (i < s.size() && s[i] == '-') {
        ++i;
        skip();
        if (i != s.size()) throw parse_error("trailing input after empty leg", base_pos + i);
        return leg;
    }
    while (i < s.size()) {
        skip();
        if (i >= s.size()) break;
        if (s[i] != '(') throw parse_error("expected '(' in decoration", base_pos + i);
        ++i;
        std::vector<int> group;
        while (true) {
            skip();
            std::size_t start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (start == i) throw parse_error("expected label in decoration group", base_pos + i);
            group.push_back(std::atoi(s.substr(start, i - start).c_str()));
            skip();
            if (i < s.size() && s[i] == ',') {
                ++i;
                continue;
            }
            break;
        }
        if (i >= s.size() || s[i] != ')')
            throw parse_error("expected ')' in decoration", base_pos + i);
        ++i;
        leg.groups.push_back(std::move(group));
        skip();
    }
    return leg;
}

Decoration decoration_from_text(const std::string& text, int m, int n) {
    Decoration d;
    d.m = m;
    d.n = n;
    std::size_t start = 0;
    while (true) {
        std::size_t bar = text.find('|', start);
        std::string part = text.substr(start, bar == std::string::npos ? bar : bar - start);
        d.legs.push_back(leg_from_text(part, start));
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    while (static_cast<int>(d.legs.size()) < m) d.legs.push_back(LegDecoration{});
    d.validate();
    return d;
}

nlohmann::json decoration_to_json(const Decoration& d) {
    nlohmann::json legs = nlohmann::json::array();
    for (const auto& leg : d.legs) {
        nlohmann::json groups = nlohmann::json::array();
        for (const auto& g : leg.groups) groups.push_back(g);
        legs.push_back(groups);
    }
    return {{"m", d.m}, {"n", d.n}, {"legs", legs}, {"codim", d.codim()},
            {"text", decoration_to_text(d)}};
}

// ---- stratum generator labels ----------------------------------------------

Generator stratum_generator(const Decoration& d) {
    if (d.empty()) throw domain_error("empty decoration has no stratum generator");
    std::ostringstream out;
    out << "O_{";
    bool first = true;
    for (std::size_t i = 0; i < d.legs.size(); ++i) {
        if (d.legs[i].empty()) continue;
        if (!first) out << ".";
        first = false;
        out << "D" << (i + 1) << "_";
        for (const auto& g : d.legs[i].groups) {
            out << "(";
            for (std::size_t j = 0; j < g.size(); ++j) {
                if (j) out << ",";
                out << g[j];
            }
            out << ")";
        }
    }
    out << "}";
    return stratum_gen(out.str());
}

bool is_stratum_label(const std::string& label) { return label.rfind("O_{D", 0) == 0; }

Decoration decoration_from_stratum_label(const std::string& label) {
    if (!is_stratum_label(label) || label.back() != '}')
        throw domain_error("not a stratum label: " + label);
    std::string body = label.substr(3, label.size() - 4); // inside O_{ }
    Decoration d;
    d.m = 0;
    d.n = 0;
    std::map<int, LegDecoration> legs;
    std::size_t i = 0;
    int max_label = 0;
    while (i < body.size()) {
        if (body[i] == '.') ++i;
        if (body[i] != 'D') throw domain_error("bad stratum label: " + label);
        ++i;
        std::size_t s = i;
        while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
        int leg = std::atoi(body.substr(s, i - s).c_str());
        if (i >= body.size() || body[i] != '_') throw domain_error("bad stratum label: " + label);
        ++i;
        LegDecoration ld;
        while (i < body.size() && body[i] == '(') {
            ++i;
            std::vector<int> group;
            while (true) {
                std::size_t t = i;
                while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
                group.push_back(std::atoi(body.substr(t, i - t).c_str()));
                max_label = std::max(max_label, group.back());
                if (i < body.size() && body[i] == ',') {
                    ++i;
                    continue;
                }
                break;
            }
            if (i >= body.size() || body[i] != ')') throw domain_error("bad stratum label: " + label);
            ++i;
            ld.groups.push_back(std::move(group));
        }
        legs[leg] = std::move(ld);
        d.m = std::max(d.m, leg);
    }
    d.legs.resize(static_cast<std::size_t>(d.m));
    for (auto& [leg, ld] : legs) d.legs[static_cast<std::size_t>(leg - 1)] = std::move(ld);
    d.n = std::max(0, max_label - d.m);
    return d;
}

Generator divisor_bundle(int leg, const std::vector<int>& added_labels) {
    std::ostringstream out;
    out << "L_{" << leg << ",(";
    for (std::size_t i = 0; i < added_labels.size(); ++i) {
        if (i) out << ",";
        out << added_labels[i];
    }
    out << ")}";
    return normal_bundle(out.str());
}

std::vector<Generator> StratumClass::normal_bundle_vars() const {
    std::vector<Generator> vars;
    for (std::size_t i = 0; i < dec.legs.size(); ++i)
        for (int j = 1; j <= dec.legs[i].degree(); ++j)
            vars.push_back(node_bundle(static_cast<int>(i + 1), j));
    return vars;
}

KExpr stratum_class_expr(const Decoration& d) {
    if (d.empty()) return KExpr::constant(1);
    return KExpr::gen(stratum_generator(d));
}

// ---- type and F-polynomial ---------------------------------------------------

DecorationType decoration_type(const LegDecoration& leg) {
    if (leg.empty()) throw domain_error("type of an empty per-leg decoration");
    for (const auto& g : leg.groups)
        if (g.empty()) throw domain_error("invalid decoration: empty group");
    int r = leg.degree();
    DecorationType t;
    // type 0: the first head is the least head
    bool first_min = true;
    for (int j = 1; j < r; ++j)
        if (leg.head(j) < leg.head(0)) first_min = false;
    if (first_min) {
        t.type0 = true;
        return t;
    }
    // descent blocks start wherever the running minimum of the heads drops
    int running = leg.head(0);
    for (int j = 1; j < r; ++j) {
        if (leg.head(j) < running) {
            running = leg.head(j);
            t.blocks_start.push_back(j + 1); // 1-based
        }
    }
    return t;
}

bool is_type0(const Decoration& d) {
    for (const auto& leg : d.legs)
        if (!leg.empty() && !decoration_type(leg).type0) return false;
    return true;
}

static std::vector<int> block_bounds(const LegDecoration& leg) {
    // returns l_0 = 1, l_1, ..., l_s, l_{s+1} = r+1
    DecorationType t = decoration_type(leg);
    std::vector<int> bounds{1};
    if (!t.type0)
        bounds.insert(bounds.end(), t.blocks_start.begin(), t.blocks_start.end());
    bounds.push_back(leg.degree() + 1);
    return bounds;
}

KExpr F_polynomial(const LegDecoration& leg, const std::vector<Generator>& vars,
                   const std::vector<int>& powers) {
    int r = leg.degree();
    if (static_cast<int>(vars.size()) != r)
        throw arity_error("F-polynomial needs one variable per group");
    std::vector<int> pw = powers.empty() ? std::vector<int>(static_cast<std::size_t>(r), 1) : powers;
    if (static_cast<int>(pw.size()) != r)
        throw arity_error("F-polynomial powers length mismatch");
    for (int p : pw)
        if (p < 1) throw arity_error("F-polynomial powers must be >= 1");

    std::vector<int> bounds = block_bounds(leg);
    KExpr f;
    for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
        KExpr prod = KExpr::constant(1);
        for (int i = bounds[b]; i < bounds[b + 1]; ++i)
            prod = prod.mul(KExpr::gen(vars[static_cast<std::size_t>(i - 1)],
                                       pw[static_cast<std::size_t>(i - 1)]));
        f = f.add(KExpr::constant(1).sub(prod));
    }
    return f;
}

KExpr F_polynomial_by_subchains(const LegDecoration& leg, const std::vector<Generator>& vars,
                                const std::vector<int>& powers) {
    int r = leg.degree();
    if (static_cast<int>(vars.size()) != r)
        throw arity_error("F-polynomial needs one variable per group");
    std::vector<int> pw = powers.empty() ? std::vector<int>(static_cast<std::size_t>(r), 1) : powers;
    if (static_cast<int>(pw.size()) != r)
        throw arity_error("F-polynomial powers length mismatch");

    // heads of the merged prefix: merged group (0..j] has head = min of heads
    std::vector<int> prefix_min(static_cast<std::size_t>(r));
    int run = leg.head(0);
    std::vector<int> argmin(static_cast<std::size_t>(r));
    int arg = 0;
    for (int j = 0; j < r; ++j) {
        if (leg.head(j) < run || j == 0) {
            run = leg.head(j);
            arg = j;
        }
        prefix_min[static_cast<std::size_t>(j)] = run;
        argmin[static_cast<std::size_t>(j)] = arg;
    }

    KExpr f;
    // Subchains pick positions i_1 < ... < i_c of the divisor chain; the
    // merged decoration is type 0 exactly when the first picked block
    // reaches the minimum head among groups up to the last picked one.
    for (unsigned mask = 1; mask < (1u << r); ++mask) {
        std::vector<int> picks;
        for (int i = 0; i < r; ++i)
            if (mask & (1u << i)) picks.push_back(i);
        int last = picks.back();
        if (picks.front() < argmin[static_cast<std::size_t>(last)]) continue; // not type 0
        KExpr prod = KExpr::constant(1);
        for (int i : picks)
            prod = prod.mul(KExpr::constant(1).sub(
                KExpr::gen(vars[static_cast<std::size_t>(i)], pw[static_cast<std::size_t>(i)])));
        f = f.add(picks.size() % 2 == 1 ? prod : prod.neg());
    }
    return f;
}

// ---- enumeration -------------------------------------------------------------

static void ordered_partitions(const std::vector<int>& labels,
                               std::vector<std::vector<int>>& current,
                               std::vector<std::vector<std::vector<int>>>& out) {
    if (labels.empty()) {
        out.push_back(current);
        return;
    }
    // first group: any nonempty subset; remaining labels recurse
    int u = static_cast<int>(labels.size());
    for (unsigned mask = 1; mask < (1u << u); ++mask) {
        std::vector<int> group, rest;
        for (int i = 0; i < u; ++i)
            ((mask >> i) & 1 ? group : rest).push_back(labels[static_cast<std::size_t>(i)]);
        current.push_back(group);
        ordered_partitions(rest, current, out);
        current.pop_back();
    }
}

static std::vector<LegDecoration> leg_decorations_on(const std::vector<int>& labels) {
    std::vector<LegDecoration> out{LegDecoration{}};
    std::vector<std::vector<std::vector<int>>> parts;
    std::vector<std::vector<int>> current;
    ordered_partitions(labels, current, parts);
    for (auto& p : parts) out.push_back(LegDecoration{std::move(p)});
    return out;
}

static void enumerate_rec(const std::vector<int>& remaining, int leg, int m, int n, int max_codim,
                          Decoration& current, std::vector<Decoration>& out) {
    if (leg == m) {
        if (current.codim() <= max_codim) out.push_back(current);
        return;
    }
    int u = static_cast<int>(remaining.size());
    for (unsigned mask = 0; mask < (1u << u); ++mask) {
        std::vector<int> mine, rest;
        for (int i = 0; i < u; ++i)
            ((mask >> i) & 1 ? mine : rest).push_back(remaining[static_cast<std::size_t>(i)]);
        for (auto& ld : leg_decorations_on(mine)) {
            if (ld.empty() && !mine.empty()) continue; // unused labels stay in `rest`
            current.legs[static_cast<std::size_t>(leg)] = ld;
            if (current.codim() <= max_codim)
                enumerate_rec(rest, leg + 1, m, n, max_codim, current, out);
            current.legs[static_cast<std::size_t>(leg)] = LegDecoration{};
        }
    }
}

std::vector<Decoration> enumerate_decorations(int m, int n, int max_codim) {
    if (m < 1 || n < 0) throw domain_error("enumerate_decorations needs m >= 1, n >= 0");
    if (n > max_forgotten_cap())
        throw enumeration_limit_error("n = " + std::to_string(n) + " exceeds cap " +
                                      std::to_string(max_forgotten_cap()));
    if (max_codim > max_codim_cap())
        throw enumeration_limit_error("max_codim exceeds cap " + std::to_string(max_codim_cap()));
    std::vector<int> labels;
    for (int a = m + 1; a <= m + n; ++a) labels.push_back(a);
    Decoration current;
    current.m = m;
    current.n = n;
    current.legs.assign(static_cast<std::size_t>(m), LegDecoration{});
    std::vector<Decoration> out;
    enumerate_rec(labels, 0, m, n, max_codim, current, out);
    std::sort(out.begin(), out.end(), [](const Decoration& a, const Decoration& b) {
        if (a.codim() != b.codim()) return a.codim() < b.codim();
        return decoration_to_text(a) < decoration_to_text(b);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---- products and normal form -------------------------------------------------

namespace {

// A tail divisor, identified by its leg and added labels (sorted).
struct Divisor {
    int leg;
    std::vector<int> added;
    friend bool operator==(const Divisor&, const Divisor&) = default;
    friend auto operator<=>(const Divisor&, const Divisor&) = default;
};

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> tmp;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(tmp));
    return tmp.empty();
}

std::vector<Divisor> divisors_of(const Decoration& d) {
    std::vector<Divisor> out;
    for (std::size_t i = 0; i < d.legs.size(); ++i) {
        std::vector<int> prefix;
        for (const auto& g : d.legs[i].groups) {
            prefix.insert(prefix.end(), g.begin(), g.end());
            std::sort(prefix.begin(), prefix.end());
            out.push_back(Divisor{static_cast<int>(i + 1), prefix});
        }
    }
    return out;
}

// Reassembles a decoration from a compatible set of divisors. Returns
// nothing when chains are not nested per leg or legs overlap in labels.
std::optional<Decoration> decoration_from_divisors(int m, int n, std::vector<Divisor> divs) {
    std::sort(divs.begin(), divs.end());
    divs.erase(std::unique(divs.begin(), divs.end()), divs.end());
    Decoration d;
    d.m = m;
    d.n = n;
    d.legs.assign(static_cast<std::size_t>(m), LegDecoration{});
    std::map<int, std::vector<std::vector<int>>> by_leg;
    for (auto& dv : divs) by_leg[dv.leg].push_back(std::move(dv.added));
    // cross-leg disjointness
    std::vector<int> used;
    for (auto& [leg, chains] : by_leg) {
        std::sort(chains.begin(), chains.end(),
                  [](const auto& a, const auto& b) { return a.size() < b.size(); });
        for (std::size_t j = 0; j + 1 < chains.size(); ++j) {
            if (chains[j].size() == chains[j + 1].size()) return std::nullopt;
            if (!subset(chains[j], chains[j + 1])) return std::nullopt;
        }
        const auto& top = chains.back();
        if (!disjoint(used, top)) return std::nullopt;
        used.insert(used.end(), top.begin(), top.end());
        std::sort(used.begin(), used.end());
        LegDecoration& ld = d.legs[static_cast<std::size_t>(leg - 1)];
        std::vector<int> prev;
        for (const auto& chain : chains) {
            std::vector<int> group;
            std::set_difference(chain.begin(), chain.end(), prev.begin(), prev.end(),
                                std::back_inserter(group));
            if (group.empty()) return std::nullopt;
            ld.groups.push_back(std::move(group));
            prev = chain;
        }
    }
    return d;
}

} // namespace

KExpr strata_normalize(const KExpr& e) {
    KExpr out;
    out = out.with_truncation(e.truncation());
    for (const auto& [mono, coeff] : e.terms()) {
        std::vector<std::pair<Generator, int>> rest;
        std::map<Divisor, int> divisor_mult;
        int m = 1, n = 0;
        bool has_strata = false;
        for (const auto& [g, exp] : mono.factors()) {
            if (g.kind == GenKind::StratumTorsion && is_stratum_label(g.label)) {
                has_strata = true;
                Decoration d = decoration_from_stratum_label(g.label);
                m = std::max(m, d.m);
                for (auto& dv : divisors_of(d)) divisor_mult[dv] += exp;
            } else {
                rest.emplace_back(g, exp);
            }
        }
        if (!has_strata) {
            out = out.add(KExpr::term(coeff, mono));
            continue;
        }
        // widest label across divisors fixes n
        int max_label = m;
        for (const auto& [dv, mult] : divisor_mult)
            for (int a : dv.added) max_label = std::max(max_label, a);
        n = max_label - m;

        std::vector<Divisor> divs;
        for (const auto& [dv, mult] : divisor_mult) divs.push_back(dv);
        auto dec = decoration_from_divisors(m, n, divs);
        if (!dec) continue; // incompatible strata: the monomial vanishes
        KExpr piece = KExpr::term(coeff, Monomial(std::move(rest)));
        for (const auto& [dv, mult] : divisor_mult) {
            if (mult >= 2) {
                KExpr cof = KExpr::constant(1).sub(KExpr::gen(divisor_bundle(dv.leg, dv.added)));
                piece = piece.mul(cof.pow(mult - 1));
            }
        }
        piece = piece.mul(stratum_class_expr(*dec));
        out = out.add(piece);
    }
    return out;
}

KExpr canonicalize(const KExpr& e) {
    KExpr flat = strata_normalize(e);
    KExpr out;
    out = out.with_truncation(flat.truncation());
    for (const auto& [mono, coeff] : flat.terms()) {
        const Generator* stratum = nullptr;
        for (const auto& [g, exp] : mono.factors())
            if (g.kind == GenKind::StratumTorsion && is_stratum_label(g.label)) stratum = &g;
        if (!stratum) {
            out = out.add(KExpr::term(coeff, mono));
            continue;
        }
        Decoration d = decoration_from_stratum_label(stratum->label);
        // Redistribute each leg's labels across its groups by size, smallest
        // labels innermost; record where each divisor lands positionally.
        Decoration canon = d;
        std::map<Generator, Generator> rename;
        for (std::size_t li = 0; li < d.legs.size(); ++li) {
            const LegDecoration& leg = d.legs[li];
            if (leg.empty()) continue;
            std::vector<int> all = leg.labels();
            std::sort(all.begin(), all.end());
            LegDecoration fresh;
            std::size_t at = 0;
            std::vector<int> old_prefix, new_prefix;
            for (int j = 0; j < leg.degree(); ++j) {
                std::size_t sz = leg.groups[static_cast<std::size_t>(j)].size();
                std::vector<int> group(all.begin() + static_cast<long>(at),
                                       all.begin() + static_cast<long>(at + sz));
                at += sz;
                fresh.groups.push_back(group);
                const auto& old_group = leg.groups[static_cast<std::size_t>(j)];
                old_prefix.insert(old_prefix.end(), old_group.begin(), old_group.end());
                std::sort(old_prefix.begin(), old_prefix.end());
                rename.emplace(divisor_bundle(static_cast<int>(li + 1), old_prefix),
                               node_bundle(static_cast<int>(li + 1), j + 1));
            }
            canon.legs[li] = fresh;
        }
        std::vector<std::pair<Generator, int>> factors;
        for (const auto& [g, exp] : mono.factors()) {
            if (&g == stratum) {
                factors.emplace_back(stratum_generator(canon), exp);
            } else if (g.kind == GenKind::NormalBundle && rename.count(g)) {
                factors.emplace_back(rename.at(g), exp);
            } else {
                factors.emplace_back(g, exp);
            }
        }
        // renaming can merge factors; rebuild through multiplication
        KExpr piece = KExpr::constant(coeff);
        for (const auto& [g, exp] : factors) piece = piece.mul(KExpr::gen(g, exp));
        out = out.add(piece);
    }
    return out;
}

KExpr strata_product(const StratumClass& a, const StratumClass& b) {
    if (a.dec.m != b.dec.m || a.dec.n != b.dec.n)
        throw domain_error("strata_product needs matching (m, n)");
    return canonicalize(stratum_class_expr(a.dec).mul(stratum_class_expr(b.dec)));
}

bool forgetful_image_stable(const StratumClass& s, int forgotten_label, int /*genus*/,
                            int total_points) {
    const Decoration& d = s.dec;
    if (forgotten_label <= d.m || forgotten_label > total_points)
        throw domain_error("forgotten label " + std::to_string(forgotten_label) +
                           " not in the forgettable range");
    for (const auto& leg : d.legs) {
        for (const auto& g : leg.groups) {
            if (std::find(g.begin(), g.end(), forgotten_label) == g.end()) continue;
            // Tail components carry their group's markings plus two special
            // points: the leg and a node on the innermost component, two
            // nodes otherwise.
            int special = static_cast<int>(g.size()) + 2;
            if (special - 1 < 3) return false;
        }
    }
    return true;
}

} // namespace stabcalc
