#pragma once

#include <string>
#include <vector>

#include "stabcalc/kexpr.hpp"
#include "stabcalc/syminertia.hpp"

namespace stabcalc {

/*
 * Finite-group character arithmetic over exact rationals: Molien series of
 * rational matrix groups (symmetric-power traces via Newton's identity, no
 * eigenvalues, no floating point) and virtual S_k-characters with the
 * trivial-isotypic multiplicity realizing chi(-) = (chi_{S_k}(-))^{S_k}.
 */

using QMatrix = std::vector<std::vector<Rat>>; // square, row-major

QMatrix identity_matrix(int n);
QMatrix mat_mul(const QMatrix& a, const QMatrix& b);
Rat mat_trace(const QMatrix& m);

struct MatrixGroup {
    std::vector<QMatrix> elements;

    int dimension() const;
    // identity present, closed under product, inverses in the list;
    // throws group_closure_error otherwise.
    void validate() const;
};

// Named groups used by the CLI: "trivial2" {I_2}, "pm1" {±I_2}, and
// "s3-standard", the integer-matrix reflection representation of S_3
// permuting 0, 1, infinity on the line.
MatrixGroup named_matrix_group(const std::string& name);

// trace of Sym^d(g) for d = 0..order, by h_d = (1/d) sum_j p_j h_{d-j}.
std::vector<Rat> sym_power_traces(const QMatrix& g, int order);

// Molien coefficients c_0..c_N: c_d = (1/|G|) sum_g trace Sym^d(g).
std::vector<Rat> molien_series(const MatrixGroup& G, int order);

// True when the series expansion of numerator/denominator (polynomials in
// q) matches coeffs through degree N. Denominator needs a nonzero constant
// term.
bool series_compare(const std::vector<Rat>& coeffs, const KExpr& numerator,
                    const KExpr& denominator, int order);
std::vector<Rat> rational_function_series(const KExpr& numerator, const KExpr& denominator,
                                          int order);

// A virtual character of S_k: one exact rational per conjugacy class,
// indexed by the partitions(k) order.
struct VirtualCharacter {
    int k;
    std::vector<Rat> values; // one per cycle type, partitions(k) order
};

// Multiplicity of the trivial character: (1/k!) sum over classes of
// |class| * chi(class). The default cap k <= 8 guards the class-size table.
Rat sk_invariant_multiplicity(const VirtualCharacter& chi);

int sk_cap();

} // namespace stabcalc
