#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stabcalc/kexpr.hpp"

#include <nlohmann/json_fwd.hpp>

namespace stabcalc {

/*
 * Combinatorics of rational-tail degeneration strata.
 *
 * A decoration records, for each retained marked point (leg) 1..m, an
 * ordered sequence of groups of forgotten labels drawn from {m+1..m+n}.
 * Group j of leg i is the set of markings on the j-th tail component of the
 * chain hanging off leg i, counted from the innermost component (the one
 * carrying the leg) outward. The associated stratum is the intersection of
 * the nested tail divisors
 *
 *   S_{i,j} = {i} u g_{i,1} u ... u g_{i,j},    j = 1..r_i,
 *
 * one chain per leg, of total codimension sum r_i.
 */

struct LegDecoration {
    // Each group is nonempty and sorted ascending; all labels across the
    // whole decoration are distinct.
    std::vector<std::vector<int>> groups;

    int degree() const { return static_cast<int>(groups.size()); }
    bool empty() const { return groups.empty(); }
    std::vector<int> labels() const;
    // head of group j (its least label)
    int head(int j) const { return groups[static_cast<std::size_t>(j)].front(); }

    friend bool operator==(const LegDecoration&, const LegDecoration&) = default;
    friend auto operator<=>(const LegDecoration&, const LegDecoration&) = default;
};

struct Decoration {
    int m = 1;
    int n = 0;
    std::vector<LegDecoration> legs; // size m

    int codim() const;
    bool empty() const { return codim() == 0; }
    void validate() const; // throws domain_error on malformed input

    friend bool operator==(const Decoration&, const Decoration&) = default;
    friend auto operator<=>(const Decoration&, const Decoration&) = default;
};

// Human layout: "(4)(8)(5,7,14) | (6)(10,12,13)(11) | (9)", one section per
// leg, "-" for a leg with no tails.
std::string decoration_to_text(const Decoration& d);
Decoration decoration_from_text(const std::string& text, int m, int n);
nlohmann::json decoration_to_json(const Decoration& d);

// Type of a per-leg decoration: type 0 when the first group's head is the
// least of all heads, otherwise the vector of positions (1-based, > 1) where
// the running minimum of the heads drops. The blocks between consecutive
// positions are the descent blocks of the F-polynomial.
struct DecorationType {
    bool type0 = false;
    std::vector<int> blocks_start; // l_1 < ... < l_s, empty iff type0

    friend bool operator==(const DecorationType&, const DecorationType&) = default;
};

DecorationType decoration_type(const LegDecoration& leg);
bool is_type0(const Decoration& d); // every leg type 0 (empty legs count as type 0)

// F-polynomial of one leg: type 0 gives 1 - prod x_i^{p_i}; a vector type
// gives the sum over descent blocks of (1 - prod over the block). `powers`
// defaults to all 1 (the powered form arises for ramified covers).
KExpr F_polynomial(const LegDecoration& leg, const std::vector<Generator>& vars,
                   const std::vector<int>& powers = {});

// The same polynomial derived the way the coefficient lemma's proof finds
// it: minus the signed sum of restrictions of the type-0 strata containing
// the chain, over subchains of the divisor chain. Independent of the block
// formula above; the two must agree.
KExpr F_polynomial_by_subchains(const LegDecoration& leg, const std::vector<Generator>& vars,
                                const std::vector<int>& powers = {});

// ---- stratum classes in the formal ring ------------------------------------

struct StratumClass {
    Decoration dec;

    int codim() const { return dec.codim(); }
    // Positional normal-bundle variables L_{i,j}, one per node, leg by leg.
    std::vector<Generator> normal_bundle_vars() const;
    friend bool operator==(const StratumClass&, const StratumClass&) = default;
};

// Stratum generators carry their decoration in the label, so expressions
// stay self-describing. Empty decorations have no generator (class 1).
Generator stratum_generator(const Decoration& d);
Decoration decoration_from_stratum_label(const std::string& label);
bool is_stratum_label(const std::string& label);

// Per-divisor normal-bundle variable (the node under divisor S_{i,j}),
// used before canonicalization: L_{i,(a,b,...)} with the divisor's added
// labels. Canonicalization renames these positionally.
Generator divisor_bundle(int leg, const std::vector<int>& added_labels);

// The class of a stratum, as a KExpr (1 for the empty decoration).
KExpr stratum_class_expr(const Decoration& d);

// ---- operations -------------------------------------------------------------

// All decorations on legs 1..m and labels {m+1..m+n} with codim <= max_codim,
// duplicate-free, in deterministic (codim, text) order; includes the empty
// decoration. Guarded by the enumeration caps.
std::vector<Decoration> enumerate_decorations(int m, int n, int max_codim);

// Product of two strata on the same (m, n): zero when the tail divisors are
// incompatible, otherwise the union stratum with a (1 - L_e) factor per
// repeated divisor, in canonical form.
KExpr strata_product(const StratumClass& a, const StratumClass& b);

// True when forgetting `label` keeps every tail component of the stratum
// with >= 3 special points.
bool forgetful_image_stable(const StratumClass& s, int forgotten_label, int genus, int total_points);

// Multiplies out every monomial's stratum generators: incompatible divisor
// collections vanish, repeated divisors contribute (1 - L_e) in per-divisor
// variables. The result has at most one stratum generator per monomial,
// with exponent 1.
KExpr strata_normalize(const KExpr& e);

// The artifact's normal form. After strata_normalize, each stratum's labels
// are redistributed within each leg (smallest labels to the innermost
// groups, preserving group sizes) and per-divisor normal-bundle variables
// are renamed to positional L_{i,j}. Different pullback orders land on one
// representative here.
KExpr canonicalize(const KExpr& e);

// Enumeration caps (env STABCALC_MAX_N / STABCALC_MAX_CODIM override).
int max_forgotten_cap();
int max_codim_cap();

} // namespace stabcalc
