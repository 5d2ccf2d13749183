#include <doctest.h>

#include <numeric>

#include "stabcalc/syminertia.hpp"
#include "stabcalc/verify.hpp"

using namespace stabcalc;

TEST_CASE("partitions") {
    CHECK(partitions(1).size() == 1);
    CHECK(partitions(5).size() == 7);
    CHECK(partitions(9).size() == 30);
    // reverse-lexicographic order
    auto p5 = partitions(5);
    CHECK(p5.front().parts_descending() == std::vector<int>{5});
    CHECK(p5[1].parts_descending() == std::vector<int>{4, 1});
    CHECK(p5[4].parts_descending() == std::vector<int>{2, 2, 1});
    CHECK(p5.back().parts_descending() == std::vector<int>{1, 1, 1, 1, 1});
    CHECK_THROWS_AS(partitions(0), domain_error);
}

TEST_CASE("cycle types from permutations") {
    CHECK(cycle_type_of({2, 1, 4, 3, 5}).parts_descending() == std::vector<int>{2, 2, 1});
    CycleType g2 = cycle_type_of(permutation_from_cycles("(2 3 4)(7 6 1)(8 9)", 9));
    CHECK(g2.parts_descending() == std::vector<int>{3, 3, 2, 1});
    CHECK(g2.total_cycles() == 4);
    CHECK(g2.distinct_lengths() == 3);
    CHECK_THROWS_AS(cycle_type_of({1, 1}), domain_error);
    CHECK_THROWS_AS(permutation_from_cycles("(1 2", 3), parse_error);
    CHECK_THROWS_AS(permutation_from_cycles("(1 2)(2 3)", 3), parse_error);
}

TEST_CASE("centralizer orders") {
    CHECK(centralizer_order(cycle_type_from_parts(5, {2, 2, 1})) == 8);
    CHECK(centralizer_order(cycle_type_from_parts(9, {3, 3, 2, 1})) == 36);
    for (int d = 1; d <= 6; ++d)
        CHECK(centralizer_order(cycle_type_from_parts(d, std::vector<int>(d, 1))) ==
              factorial(static_cast<unsigned>(d)));

    // brute-force commutant check, d <= 6 here (the acceptance run covers 7)
    for (int d = 1; d <= 6; ++d) {
        for (const auto& ct : partitions(d)) {
            std::vector<int> rep;
            int base = 0;
            for (int part : ct.parts_descending()) {
                for (int j = 1; j < part; ++j) rep.push_back(base + j + 1);
                rep.push_back(base + 1);
                base += part;
            }
            CHECK(brute_force_centralizer_order(rep) == centralizer_order(ct));
        }
    }

    // class equation: class sizes sum to |S_d|
    for (int d = 1; d <= 8; ++d) {
        Int total = 0;
        for (const auto& ct : partitions(d))
            total += factorial(static_cast<unsigned>(d)) / centralizer_order(ct);
        CHECK(total == factorial(static_cast<unsigned>(d)));
    }
}

TEST_CASE("inertia components") {
    auto comps = inertia_components(5);
    REQUIRE(comps.size() == partitions(5).size());

    // the 2+2+1 component: fixed locus X^3, group S_1 x (S_2 x (Z/2)^2),
    // coarse target Sym^3 X with per-factor list Sym^2 X x X
    const auto& c = comps[4];
    CHECK(c.cycle_type.parts_descending() == std::vector<int>{2, 2, 1});
    CHECK(c.fixed_locus_rank == 3);
    CHECK(c.coarse_target_rank == 3);
    CHECK(c.group_descriptor == std::vector<std::pair<int, int>>{{1, 1}, {2, 2}});
    CHECK(c.centralizer == 8);
    CHECK(c.coarse_factors == std::vector<std::string>{"Sym^2 X", "X"});

    // 1+1+1+1+1: X^5 / S_5 with coarse Sym^5 X
    const auto& last = comps.back();
    CHECK(last.fixed_locus_rank == 5);
    CHECK(last.centralizer == 120);
    CHECK(last.coarse_factors == std::vector<std::string>{"Sym^5 X"});

    auto one = inertia_components(1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].fixed_locus_rank == 1);
    CHECK(one[0].coarse_target_rank == 1);
}

TEST_CASE("gerbe fibers") {
    auto sigma = permutation_from_cycles("(1 2)(3 4)", 5);
    GerbeFiber f = gerbe_fiber(4, sigma);
    CHECK(f.orbits == std::vector<std::pair<int, int>>{{2, 2}, {2, 2}, {1, 4}});
    CHECK(f.coarse_fiber_count == 3);
    CHECK_FALSE(f.representable);

    GerbeFiber id = gerbe_fiber(1, {1, 2, 3});
    CHECK(id.orbits == std::vector<std::pair<int, int>>{{1, 1}, {1, 1}, {1, 1}});
    CHECK(id.coarse_fiber_count == 3);
    CHECK(id.representable);

    GerbeFiber two = gerbe_fiber(2, sigma);
    CHECK(two.orbits == std::vector<std::pair<int, int>>{{2, 1}, {2, 1}, {1, 2}});
    CHECK(two.representable);

    // orbit lengths always sum to d; stabilizers multiply back to r
    for (const auto& fib : {f, id, two}) {
        int total = 0;
        for (const auto& [len, stab] : fib.orbits) {
            total += len;
            CHECK(len * stab == fib.r);
        }
        CHECK(total == static_cast<int>(fib.sigma.size()));
    }

    // representable exactly when r is the lcm of the cycle lengths, and the
    // coarse fiber always counts the cycles
    for (int d = 1; d <= 5; ++d) {
        for (const auto& ct : partitions(d)) {
            std::vector<int> rep;
            int base = 0;
            for (int part : ct.parts_descending()) {
                for (int j = 1; j < part; ++j) rep.push_back(base + j + 1);
                rep.push_back(base + 1);
                base += part;
            }
            long ord = permutation_order(rep);
            for (long mult = 1; mult <= 3; ++mult) {
                GerbeFiber fib = gerbe_fiber(static_cast<int>(ord * mult), rep);
                CHECK(fib.representable == (mult == 1));
                CHECK(fib.coarse_fiber_count == ct.total_cycles());
            }
        }
    }

    CHECK_THROWS_AS(gerbe_fiber(3, sigma), precondition_error);
}
