#include <doctest.h>

#include <map>
#include <set>

#include "stabcalc/xidata.hpp"

using namespace stabcalc;

namespace {

// order of the subgroup of S_{g*k} generated by the given permutations
long closure_order(int points, std::vector<std::vector<int>> gens) {
    std::set<std::vector<int>> seen;
    std::vector<int> id(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) id[static_cast<std::size_t>(i)] = i + 1;
    seen.insert(id);
    std::vector<std::vector<int>> frontier{id};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& p : frontier) {
            for (const auto& g : gens) {
                std::vector<int> q(p.size());
                for (std::size_t i = 0; i < p.size(); ++i)
                    q[i] = g[static_cast<std::size_t>(p[i] - 1)];
                if (seen.insert(q).second) next.push_back(q);
            }
        }
        frontier = std::move(next);
    }
    return static_cast<long>(seen.size());
}

// S_g wr S_k inside S_{gk}: adjacent transpositions within each block plus
// the block swaps
long wreath_order_brute(int g, int k) {
    int points = g * k;
    if (points == 0) return 1;
    std::vector<std::vector<int>> gens;
    std::vector<int> id(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) id[static_cast<std::size_t>(i)] = i + 1;
    for (int b = 0; b < k; ++b)
        for (int i = 0; i + 1 < g; ++i) {
            auto t = id;
            std::swap(t[static_cast<std::size_t>(b * g + i)],
                      t[static_cast<std::size_t>(b * g + i + 1)]);
            gens.push_back(t);
        }
    for (int b = 0; b + 1 < k; ++b) {
        auto s = id;
        for (int i = 0; i < g; ++i)
            std::swap(s[static_cast<std::size_t>(b * g + i)],
                      s[static_cast<std::size_t>((b + 1) * g + i)]);
        gens.push_back(s);
    }
    if (gens.empty()) return 1;
    return closure_order(points, gens);
}

} // namespace

TEST_CASE("validation examples") {
    // the elliptic double cover simply ramified at four points
    XiData elliptic{1, 2, 0, 3, {2}};
    CHECK(validate_xi(elliptic).all_pass());

    // identity cover of the line
    XiData trivial{0, 1, 0, 0, {1}};
    CHECK(validate_xi(trivial).all_pass());

    // wrong simple-ramification count breaks Riemann-Hurwitz
    XiData bad{1, 2, 0, 2, {2}};
    XiReport rep = validate_xi(bad);
    CHECK_FALSE(rep.all_pass());
    bool rh_failed = false;
    for (const auto& c : rep.checks)
        if (c.name == "riemann-hurwitz" && !c.pass) rh_failed = true;
    CHECK(rh_failed);
}

TEST_CASE("field mutations break validation") {
    XiData base{1, 2, 0, 3, {2}};
    REQUIRE(validate_xi(base).all_pass());
    // g, d, k and gamma are pinned by the invariants; #J is genuinely free
    // (unramified points add nothing to Riemann-Hurwitz).
    for (int delta : {-1, +1}) {
        XiData m1 = base;
        m1.g += delta;
        CHECK_FALSE(validate_xi(m1).all_pass());
        XiData m2 = base;
        m2.d += delta;
        CHECK_FALSE(validate_xi(m2).all_pass());
        XiData m3 = base;
        m3.k += delta;
        CHECK_FALSE(validate_xi(m3).all_pass());
        XiData m4 = base;
        m4.gamma[0] += delta;
        CHECK_FALSE(validate_xi(m4).all_pass());
    }
    XiData more_j = base;
    more_j.J_size += 1;
    CHECK(validate_xi(more_j).all_pass());
}

TEST_CASE("derived quantities") {
    XiData x{1, 2, 2, 3, {2}};
    CHECK(x.n() == 6);
    CHECK(x.ell() == 2 * 2 + 3 * 1 + 1);
    CHECK(x.R() == 3);
    CHECK(x.A_size() == x.ell() - x.R());
    CHECK(x.A_size() == (x.J_size + x.k) * x.g);
    CHECK(x.A_size() >= 0);
    CHECK(x.r_infinity() == 2);
    CHECK(x.r_at(0) == 1);
    CHECK(x.r_at(2) == 2);
    XiData mixed{3, 4, 0, 0, {2, 1, 1}};
    CHECK(mixed.r_infinity() == 2);
    XiData lcm_case{5, 6, 0, 0, {4, 2}};
    CHECK(lcm_case.r_infinity() == 4);
}

TEST_CASE("k from dimensions") {
    CHECK(k_from_dims(1, 1) == 3);
    CHECK(k_from_dims(0, 1) == 0);
    CHECK(k_from_dims(3, 2) == 10);
    CHECK_THROWS_AS(k_from_dims(0, 0), infeasible_error);
}

TEST_CASE("torsor degree") {
    CHECK(degree_e(XiData{1, 2, 0, 3, {2}}) == 6);
    CHECK(degree_e(XiData{0, 1, 5, 4, {1}}) == 24); // g = 0: e = k!
    CHECK(degree_e(XiData{2, 3, 1, 2, {3}}) == 16);

    for (int g = 0; g <= 4; ++g)
        for (int k = 0; k <= 4; ++k)
            for (int J = 0; J <= 3; ++J) {
                XiData x{g, g + 1, J, k, {g + 1}};
                CHECK(degree_e(x) == gamma_group_order(x));
            }

    // wreath factor against permutation-group closure (g >= 1: the g = 0
    // wreath product acts on no points, so the permutation model collapses)
    for (int g = 1; g <= 2; ++g)
        for (int k = 0; k <= 3; ++k) {
            Int expect = int_pow(factorial(static_cast<unsigned>(g)), static_cast<unsigned>(k)) *
                         factorial(static_cast<unsigned>(k));
            CHECK(Int(wreath_order_brute(g, k)) == expect);
        }
}
