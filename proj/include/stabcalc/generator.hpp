#pragma once

#include <compare>
#include <string>
#include <tuple>

namespace stabcalc {

// Generator kinds, in monomial-order precedence. LineBundle generators are
// units (negative exponents allowed); StratumTorsion generators square by a
// rewrite relation; SeriesVar generators carry the truncation grading.
enum class GenKind : int {
    LineBundle = 0,
    NormalBundle = 1,
    StratumTorsion = 2,
    SeriesVar = 3,
};

const char* kind_name(GenKind k);

struct Generator {
    GenKind kind;
    std::string label;

    friend bool operator==(const Generator&, const Generator&) = default;
    // Fixed total order: (kind, label). This order is what makes canonical
    // forms and serialization deterministic.
    friend auto operator<=>(const Generator& a, const Generator& b) {
        if (auto c = static_cast<int>(a.kind) <=> static_cast<int>(b.kind); c != 0) return c;
        return a.label <=> b.label;
    }
};

inline Generator line_bundle(std::string label) {
    return {GenKind::LineBundle, std::move(label)};
}
inline Generator normal_bundle(std::string label) {
    return {GenKind::NormalBundle, std::move(label)};
}
inline Generator stratum_gen(std::string label) {
    return {GenKind::StratumTorsion, std::move(label)};
}
inline Generator series_var(std::string label) {
    return {GenKind::SeriesVar, std::move(label)};
}

// psi class at marked point i, named "L1", "L2", ...
inline Generator psi(int i) { return line_bundle("L" + std::to_string(i)); }

// Downstairs psi class for the ramified-cover formulas, named "M1", ...
inline Generator psi_down(int i) { return line_bundle("M" + std::to_string(i)); }

// Normal-bundle class at node `node` of the tail chain at leg `leg`
// (canonical positional name, "L_{1,2}" style).
inline Generator node_bundle(int leg, int node) {
    return normal_bundle("L_{" + std::to_string(leg) + "," + std::to_string(node) + "}");
}

// Infers the kind of a bare label in expression text. "O_{...}" is a
// stratum class, "L_{...}" a normal-bundle class, "q"/"t" series variables,
// anything else a line bundle.
Generator generator_from_label(const std::string& label);

} // namespace stabcalc
