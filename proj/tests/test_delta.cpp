#include <doctest.h>

#include "stabcalc/delta.hpp"

using namespace stabcalc;

namespace {
Generator X(int i) { return line_bundle("x" + std::to_string(i)); }
KExpr E(const std::string& s) { return deserialize(s); }
} // namespace

TEST_CASE("single-variable examples") {
    Generator x = line_bundle("x");
    CHECK(delta(E("x"), {x}) == KExpr::constant(-1));
    CHECK(delta(E("7"), {x}).is_zero());
    for (int m = 1; m <= 10; ++m) {
        KExpr expected;
        for (int j = 0; j < m; ++j) expected = expected.sub(KExpr::gen(x, j));
        CHECK(delta(KExpr::gen(x, m), {x}) == expected);
    }
    // delta(1 - x) = 1
    CHECK(delta(E("1 - x"), {x}) == KExpr::constant(1));
}

TEST_CASE("two variables") {
    CHECK(delta(E("x1*x2"), {X(1), X(2)}) == KExpr::constant(1));
    // a variable the expression misses kills the term
    CHECK(delta(E("x1"), {X(1), X(2)}).is_zero());
    CHECK(delta(E("2 - x1 - x2"), {X(1), X(2)}).is_zero());
    // delta over no variables is the identity
    CHECK(delta(E("x1 + 3"), {}) == E("x1 + 3"));
}

TEST_CASE("linearity over constants in the active variables") {
    Generator x = line_bundle("x");
    Generator L = line_bundle("L1");
    KExpr f = E("x^2 + 3*x");
    KExpr g = E("x^3 - x");
    KExpr c = E("2*L1 - 1");
    CHECK(delta(c.mul(f).add(g), {x}) == c.mul(delta(f, {x})).add(delta(g, {x})));
}

TEST_CASE("factorization law") {
    // delta(x1^2 x2) = delta(x1^2) delta(x2) = (-1 - x1)(-1) = 1 + x1
    CHECK(delta(E("x1^2*x2"), {X(1), X(2)}) == E("1 + x1"));
    CHECK(delta_factor_law({{E("x1^2"), {X(1)}}, {E("x2"), {X(2)}}}));
    CHECK(delta_factor_law({{E("x1^2"), {X(1)}}}));
    CHECK(delta_factor_law({{E("1 - x1"), {X(1)}}, {E("1 - x2"), {X(2)}}}));
    CHECK(delta(E("(1-x1)*(1-x2)"), {X(1), X(2)}) == KExpr::constant(1));
    CHECK_THROWS_AS(delta_factor_law({{E("x1"), {X(1)}}, {E("x1"), {X(1)}}}),
                    precondition_error);
}

TEST_CASE("series input is handled termwise") {
    Generator x = line_bundle("x");
    KExpr s = E("1 + q*x + q^2*x^2 @2");
    KExpr d = delta(s, {x});
    CHECK(d == E("-1*q - q^2 - q^2*x @2"));
    CHECK(d.truncation() == 2);
}

TEST_CASE("guards") {
    Generator x = line_bundle("x");
    CHECK_THROWS_AS(delta(KExpr::gen(x, -1), {x}), precondition_error);
    CHECK_THROWS_AS(delta(E("x"), {x, x}), precondition_error);
    CHECK_THROWS_AS(divide_by_one_minus(E("1"), x), internal_error);
    CHECK(divide_by_one_minus(E("1 - x^3"), x) == E("1 + x + x^2"));
}
