#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabcalc/errors.hpp"
#include "stabcalc/generator.hpp"
#include "stabcalc/rational.hpp"

#include <nlohmann/json_fwd.hpp>

namespace stabcalc {

/*
 * The formal ring of K-theory expressions.
 *
 * A KExpr is a finite sum of monomials with exact rational coefficients.
 * A monomial is a sorted list of (generator, exponent) pairs. Only
 * LineBundle generators (units) may carry negative exponents. An optional
 * truncation order turns the expression into a truncated series: monomials
 * whose total SeriesVar degree exceeds the order are dropped, and the order
 * propagates pessimistically (min) through arithmetic.
 *
 * Values are immutable in spirit: every operation returns a fresh
 * canonical-form expression and never mutates shared state.
 */

class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::pair<Generator, int>> factors);

    static Monomial unit() { return Monomial(); }
    static Monomial single(const Generator& g, int exp = 1);

    const std::vector<std::pair<Generator, int>>& factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }
    int exponent_of(const Generator& g) const;
    bool contains(const Generator& g) const { return exponent_of(g) != 0; }

    // Total degree in SeriesVar generators; this is the grading truncation
    // orders are measured in.
    int series_degree() const;

    Monomial times(const Monomial& other) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend bool operator<(const Monomial& a, const Monomial& b) {
        return a.factors_ < b.factors_;
    }

private:
    void validate() const;
    // sorted by generator, exponents nonzero
    std::vector<std::pair<Generator, int>> factors_;
};

class KExpr {
public:
    using TermMap = std::map<Monomial, Rat>;

    KExpr() = default;

    static KExpr zero() { return KExpr(); }
    static KExpr constant(const Rat& c);
    static KExpr constant(long c) { return constant(Rat(c)); }
    static KExpr gen(const Generator& g, int exp = 1);
    static KExpr term(const Rat& coeff, const Monomial& mono);

    const TermMap& terms() const { return terms_; }
    std::optional<int> truncation() const { return truncation_; }
    KExpr with_truncation(std::optional<int> order) const;

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const; // coefficient of the unit monomial
    Rat coefficient(const Monomial& m) const;

    KExpr add(const KExpr& other) const;
    KExpr sub(const KExpr& other) const;
    KExpr mul(const KExpr& other) const;
    KExpr neg() const;
    KExpr scale(const Rat& c) const;
    KExpr pow(int k) const; // k >= 0

    // Replaces each bound generator by an expression. Generators bound with
    // negative exponents must map to invertible expressions (a single term
    // in unit generators). Distributes over add/mul by construction.
    KExpr substitute(const std::map<Generator, KExpr>& bindings) const;

    // Rewrites x^k -> c^(k-1) x for every StratumTorsion generator x with a
    // self-intersection cofactor c in `relations` (the relation x^2 = c x).
    // Missing relation for a squared generator raises
    // unresolved_relation_error. Idempotent.
    KExpr torsion_reduce(const std::map<Generator, KExpr>& relations) const;

    // All generators occurring in the expression, in canonical order.
    std::vector<Generator> generators() const;
    // Max exponent of g over all monomials (0 if absent).
    int degree_in(const Generator& g) const;
    // Splits by the exponent of g: result[k] = coefficient expression of g^k.
    std::map<int, KExpr> collect(const Generator& g) const;

    friend bool operator==(const KExpr&, const KExpr&) = default;

private:
    void add_term(const Monomial& m, const Rat& c);
    void enforce_truncation();

    TermMap terms_;
    std::optional<int> truncation_;

    friend KExpr operator+(const KExpr& a, const KExpr& b);
};

KExpr operator+(const KExpr& a, const KExpr& b);
KExpr operator-(const KExpr& a, const KExpr& b);
KExpr operator*(const KExpr& a, const KExpr& b);
KExpr operator-(const KExpr& a);

// ---- text serialization -------------------------------------------------
//
// Canonical writer grammar, one term per monomial in canonical order:
//
//   expr  := "0" | term (" + " term)* [" @" INT]
//   term  := coeff ("*" factor)*
//   factor := label ("^" INT)?
//   coeff := INT | INT "/" INT
//
// Labels of the form O_{...} and L_{...} run to the matching brace. The
// reader additionally accepts a conventional expression grammar with
// parentheses, unary minus, implicit multiplication of parenthesized
// factors, and caret powers; deserialize(serialize(e)) == e.

std::string serialize(const KExpr& e);
KExpr deserialize(const std::string& text);

nlohmann::json kexpr_to_json(const KExpr& e);
KExpr kexpr_from_json(const nlohmann::json& j);

// Configurable guard against runaway exponents (arithmetic-limit error).
int max_exponent_cap();

} // namespace stabcalc
