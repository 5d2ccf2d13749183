#pragma once

#include <string>
#include <vector>

namespace stabcalc {

// Which library operations each CLI subcommand reaches. The coverage test
// checks that every public operation appears somewhere in this table.
struct DispatchEntry {
    std::string subcommand;
    std::vector<std::string> operations;
};

inline const std::vector<DispatchEntry>& dispatch_table() {
    static const std::vector<DispatchEntry> table = {
        {"pullback",
         {"pullback_closed", "pullback_oracle", "coeff_stratum", "pullback_exp",
          "ramified_pullback", "symmetrize_to_base", "kexpr_arith", "substitute", "delta",
          "serialize", "deserialize", "torsion_reduce", "strata_product", "F_polynomial",
          "enumerate_decorations"}},
        {"delta", {"delta", "delta_factor_law", "kexpr_arith", "serialize", "deserialize"}},
        {"decorations",
         {"enumerate_decorations", "decoration_type", "F_polynomial", "strata_product",
          "forgetful_image_stable", "torsion_reduce", "serialize"}},
        {"inertia", {"partitions", "centralizer_order", "inertia_components"}},
        {"gerbe-fiber", {"gerbe_fiber", "partitions"}},
        {"xi", {"validate_xi", "k_from_dims", "degree_e"}},
        {"molien", {"molien_series", "series_compare", "sk_invariant_multiplicity"}},
        {"verify-all",
         {"pullback_closed", "pullback_oracle", "coeff_stratum", "ramified_pullback", "delta",
          "delta_factor_law", "torsion_reduce", "partitions", "centralizer_order",
          "inertia_components", "gerbe_fiber", "validate_xi", "k_from_dims", "degree_e",
          "molien_series", "series_compare", "run"}},
    };
    return table;
}

// The operation inventory the coverage test checks against.
inline const std::vector<std::string>& operation_inventory() {
    static const std::vector<std::string> ops = {
        "kexpr_arith",   "torsion_reduce",    "substitute",          "serialize",
        "deserialize",   "enumerate_decorations", "decoration_type", "F_polynomial",
        "strata_product", "forgetful_image_stable", "delta",          "delta_factor_law",
        "pullback_closed", "pullback_oracle", "coeff_stratum",       "pullback_exp",
        "ramified_pullback", "symmetrize_to_base", "partitions",     "centralizer_order",
        "inertia_components", "gerbe_fiber",  "validate_xi",         "k_from_dims",
        "degree_e",      "molien_series",     "series_compare",      "sk_invariant_multiplicity",
        "run",
    };
    return ops;
}

} // namespace stabcalc
