#include "stabcalc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <sstream>

#include "stabcalc/decoration.hpp"
#include "stabcalc/delta.hpp"
#include "stabcalc/molien.hpp"
#include "stabcalc/pullback.hpp"
#include "stabcalc/syminertia.hpp"
#include "stabcalc/xidata.hpp"

namespace stabcalc {

namespace {

using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

struct Failure {
    std::ostringstream out;
    bool any = false;
    void note(const std::string& msg) {
        if (any) out << "; ";
        out << msg;
        any = true;
    }
};

KExpr L(int i, int k = 1) { return KExpr::gen(psi(i), k); }

// criterion 1: the two-point pullback display, exactly
CriterionResult criterion_display() {
    auto start = Clock::now();
    KExpr total = pullback_closed({0, 1, 2, L(1)}).total;
    KExpr expected = deserialize(
        "1*L1 + -1*O_{D1_(2)} + -1*O_{D1_(3)} + -1*O_{D1_(2,3)} + 1*O_{D1_(2)(3)}");
    long ms = ms_since(start);
    bool pass = (total == expected) && ms < 1000;
    return {1, "two-point pullback display", pass,
            "got " + serialize(total) + (ms < 1000 ? "" : "; over time budget"), ms};
}

// criterion 2: every forget order lands on the closed form, n = 3
CriterionResult criterion_order_independence() {
    auto start = Clock::now();
    Failure f;
    for (int power : {1, 2}) {
        PullbackProblem p{0, 1, 3, L(1, power)};
        KExpr closed = pullback_closed(p).total;
        std::vector<int> order{2, 3, 4};
        do {
            KExpr got = pullback_oracle(p, order);
            if (!(got == closed)) {
                std::ostringstream o;
                o << "order";
                for (int q : order) o << " " << q;
                o << " for L1^" << power << " disagrees";
                f.note(o.str());
            }
        } while (std::next_permutation(order.begin(), order.end()));
    }
    long ms = ms_since(start);
    bool pass = !f.any && ms < 10000;
    return {2, "oracle order independence", pass,
            f.any ? f.out.str() : "6 orders x {L1, L1^2} all equal the closed form", ms};
}

// criterion 3: stratum coefficients equal the coefficient-lemma values
CriterionResult criterion_coefficients() {
    auto start = Clock::now();
    Failure f;
    int checked = 0;
    for (int n = 0; n <= 3; ++n) {
        for (int k = 1; k <= 4; ++k) {
            PullbackProblem p{0, 1, n, L(1, k)};
            for (const auto& term : pullback_closed(p).terms) {
                KExpr lemma = coeff_stratum(p, term.stratum);
                ++checked;
                if (!(lemma == term.coefficient))
                    f.note("n=" + std::to_string(n) + " k=" + std::to_string(k) + " stratum " +
                           decoration_to_text(term.stratum));
            }
        }
    }
    long ms = ms_since(start);
    bool pass = !f.any && ms < 30000;
    return {3, "coefficient lemma", pass,
            f.any ? f.out.str() : std::to_string(checked) + " stratum coefficients match", ms};
}

// criterion 4: sign law for G = L1 through n = 4
CriterionResult criterion_sign_law() {
    auto start = Clock::now();
    Failure f;
    int type0_count = 0, other_count = 0;
    for (int n = 1; n <= 4; ++n) {
        for (const auto& term : pullback_closed({0, 1, n, L(1)}).terms) {
            if (term.stratum.empty()) continue;
            if (is_type0(term.stratum)) {
                ++type0_count;
                KExpr expected = KExpr::constant(term.stratum.codim() % 2 == 0 ? 1 : -1);
                if (!(term.coefficient == expected))
                    f.note("type-0 stratum " + decoration_to_text(term.stratum) +
                           " has coefficient " + serialize(term.coefficient));
            } else {
                ++other_count;
                if (!term.coefficient.is_zero())
                    f.note("stratum " + decoration_to_text(term.stratum) +
                           " should not appear in pi*L1");
            }
        }
    }
    long ms = ms_since(start);
    return {4, "sign law for pi*L1", !f.any,
            f.any ? f.out.str()
                  : std::to_string(type0_count) + " type-0 strata at (-1)^codim, " +
                        std::to_string(other_count) + " others at 0",
            ms};
}

// criterion 5: the torsion identity in the relation ring
CriterionResult criterion_torsion_identity() {
    auto start = Clock::now();
    Failure f;
    Generator x = stratum_gen("x");
    Generator Lgen = line_bundle("L");
    std::map<Generator, KExpr> rel{{x, KExpr::constant(1).sub(KExpr::gen(Lgen))}};
    for (int m = 1; m <= 10; ++m) {
        KExpr lhs = KExpr::constant(1)
                        .sub(KExpr::constant(1).sub(KExpr::gen(x)).pow(m))
                        .torsion_reduce(rel);
        KExpr geom;
        for (int j = 0; j < m; ++j) geom = geom.add(KExpr::gen(Lgen, j));
        KExpr rhs = geom.mul(KExpr::gen(x));
        if (!(lhs == rhs)) f.note("geometric-sum form fails at m=" + std::to_string(m));
        KExpr via_delta = delta(KExpr::gen(Lgen, m), {Lgen}).neg().mul(KExpr::gen(x));
        if (!(lhs == via_delta)) f.note("delta form fails at m=" + std::to_string(m));
    }
    long ms = ms_since(start);
    return {5, "torsion identity", !f.any,
            f.any ? f.out.str()
                  : "1-(1-x)^m = (sum_j L^j) x = -delta(L^m) x for m <= 10; note the minus "
                    "sign: the identity determines -delta(L^m), not +delta(L^m)",
            ms};
}

// criterion 6: difference-operator laws
CriterionResult criterion_delta_laws() {
    auto start = Clock::now();
    Failure f;
    Generator x = line_bundle("x");
    for (int m = 1; m <= 10; ++m) {
        KExpr expected;
        for (int j = 0; j < m; ++j) expected = expected.sub(KExpr::gen(x, j));
        if (!(delta(KExpr::gen(x, m), {x}) == expected))
            f.note("delta(x^" + std::to_string(m) + ") wrong");
    }

    std::mt19937 rng(991123);
    auto rand_int = [&rng](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
    };
    int instances = 0;
    while (instances < 200) {
        int nf = rand_int(1, 3);
        std::vector<DeltaRequest> factors;
        int next_var = 1;
        for (int i = 0; i < nf; ++i) {
            int nv = rand_int(1, 2);
            std::vector<Generator> vars;
            for (int v = 0; v < nv; ++v) vars.push_back(line_bundle("x" + std::to_string(next_var++)));
            KExpr poly;
            int terms = rand_int(1, 4);
            for (int t = 0; t < terms; ++t) {
                int budget = 4;
                Monomial mono;
                for (const auto& v : vars) {
                    int e = rand_int(0, budget);
                    budget -= e;
                    if (e > 0) mono = mono.times(Monomial::single(v, e));
                }
                int c = rand_int(-3, 3);
                if (c == 0) c = 1;
                poly = poly.add(KExpr::term(Rat(c), mono));
            }
            if (poly.is_zero()) poly = KExpr::constant(1);
            factors.push_back({poly, vars});
        }
        ++instances;
        if (!delta_factor_law(factors)) f.note("factor law fails on instance " + std::to_string(instances));
    }
    long ms = ms_since(start);
    return {6, "difference operator laws", !f.any,
            f.any ? f.out.str() : "delta(x^m) for m <= 10 and 200 random factorization instances",
            ms};
}

// criterion 7: ramified pullback specializations
CriterionResult criterion_ramified() {
    auto start = Clock::now();
    Failure f;
    for (int n = 0; n <= 3; ++n) {
        for (int k = 1; k <= 4; ++k) {
            RamifiedProblem rp;
            rp.R = 1;
            rp.n = n;
            rp.G = KExpr::gen(psi_down(1), k);
            rp.leg_multiplicities = {1};
            KExpr ram = ramified_pullback(rp).total;
            KExpr closed = pullback_closed({0, 1, n, L(1, k)}).total;
            if (!(ram == closed))
                f.note("unit multiplicities disagree at n=" + std::to_string(n) +
                       " k=" + std::to_string(k));
        }
    }
    RamifiedProblem lead;
    lead.R = 1;
    lead.n = 0;
    lead.G = KExpr::gen(psi_down(1));
    lead.leg_multiplicities = {2};
    if (!(ramified_pullback(lead).total == L(1, 2))) f.note("leading term for m(t1)=2 is not L1^2");
    long ms = ms_since(start);
    return {7, "ramified specialization", !f.any,
            f.any ? f.out.str() : "unit multiplicities reduce to the unramified closed form", ms};
}

// criterion 8: inertia components of Sym^5 and centralizer orders
CriterionResult criterion_inertia() {
    auto start = Clock::now();
    Failure f;
    auto parts5 = partitions(5);
    std::vector<std::vector<int>> expected{{5}, {4, 1}, {3, 2}, {3, 1, 1},
                                           {2, 2, 1}, {2, 1, 1, 1}, {1, 1, 1, 1, 1}};
    if (parts5.size() != 7) f.note("partition count of 5 is not 7");
    for (std::size_t i = 0; i < std::min(parts5.size(), expected.size()); ++i)
        if (parts5[i].parts_descending() != expected[i])
            f.note("partition list mismatch at index " + std::to_string(i));

    auto representative = [](const CycleType& ct) {
        std::vector<int> perm;
        int base = 0;
        for (int part : ct.parts_descending()) {
            for (int j = 1; j < part; ++j) perm.push_back(base + j + 1);
            perm.push_back(base + 1);
            base += part;
        }
        return perm;
    };
    for (int d = 1; d <= 7; ++d) {
        for (const auto& ct : partitions(d)) {
            Int formula = centralizer_order(ct);
            Int brute = brute_force_centralizer_order(representative(ct));
            if (formula != brute)
                f.note("centralizer mismatch for d=" + std::to_string(d));
        }
    }
    if (centralizer_order(cycle_type_from_parts(5, {2, 2, 1})) != 8)
        f.note("centralizer of 2+2+1 in S5 is not 8");
    CycleType spot = cycle_type_from_parts(9, {3, 3, 2, 1});
    if (centralizer_order(spot) != 36) f.note("centralizer of 3+3+2+1 in S9 is not 36");
    if (brute_force_centralizer_order(representative(spot)) != 36)
        f.note("brute-force centralizer of 3+3+2+1 in S9 is not 36");
    if (inertia_components(5).size() != 7) f.note("inertia component count of Sym^5 is not 7");
    long ms = ms_since(start);
    bool pass = !f.any && ms < 20000;
    return {8, "inertia of Sym^5 and centralizers", pass,
            f.any ? f.out.str() : "7 components; centralizers match brute force for d <= 7 and d=9",
            ms};
}

// criterion 9: gerbe fiber of the order-4 gerbe over (12)(34)(5)
CriterionResult criterion_gerbe() {
    auto start = Clock::now();
    Failure f;
    GerbeFiber gf = gerbe_fiber(4, permutation_from_cycles("(1 2)(3 4)", 5));
    std::vector<std::pair<int, int>> expected{{2, 2}, {2, 2}, {1, 4}};
    if (gf.orbits != expected) f.note("orbit multiset is not Bmu_2 + Bmu_2 + Bmu_4");
    if (gf.coarse_fiber_count != 3) f.note("coarse fiber is not 3 points");
    if (gf.representable) f.note("classifying map should not be representable");
    long ms = ms_since(start);
    return {9, "gerbe fiber", !f.any,
            f.any ? f.out.str() : "B mu_2 + B mu_2 + B mu_4, coarse fiber 3, not representable",
            ms};
}

// criterion 10: Molien series of the degree-3 reflection group
CriterionResult criterion_molien() {
    auto start = Clock::now();
    Failure f;
    auto coeffs = molien_series(named_matrix_group("s3-standard"), 20);
    KExpr num = KExpr::constant(1);
    KExpr den = deserialize("(1-q^2)*(1-q^3)");
    if (!series_compare(coeffs, num, den, 20)) f.note("series is not 1/((1-q^2)(1-q^3))");
    if (coeffs[1] != 0) f.note("c_1 != 0");
    if (coeffs[2] != 1 || coeffs[3] != 1) f.note("c_2, c_3 != 1");
    long ms = ms_since(start);
    bool pass = !f.any && ms < 1000;
    return {10, "Molien verification", pass,
            f.any ? f.out.str() : "coefficients match 1/((1-q^2)(1-q^3)) through q^20", ms};
}

// criterion 11: discrete-data bookkeeping
CriterionResult criterion_xi() {
    auto start = Clock::now();
    Failure f;
    int k = k_from_dims(1, 1);
    if (k != 3) f.note("k_from_dims(1,1) != 3");
    XiData elliptic{1, 2, 0, k, {2}};
    if (!validate_xi(elliptic).all_pass()) f.note("elliptic data fails validation");
    if (degree_e(elliptic) != 6) f.note("degree e of the elliptic data is not 6 = |S_3|");
    for (int g = 0; g <= 4; ++g)
        for (int kk = 0; kk <= 4; ++kk)
            for (int J = 0; J <= 3; ++J) {
                XiData x{g, g + 1, J, kk, {g + 1}};
                if (degree_e(x) != gamma_group_order(x))
                    f.note("degree/group-order mismatch at g=" + std::to_string(g) +
                           " k=" + std::to_string(kk) + " J=" + std::to_string(J));
            }
    long ms = ms_since(start);
    return {11, "discrete-data bookkeeping", !f.any,
            f.any ? f.out.str() : "Riemann-Hurwitz, k = #I + 3g - 1, e = |Gamma| on the grid", ms};
}

} // namespace

std::vector<std::vector<int>> all_permutations(int d) {
    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

Int brute_force_centralizer_order(const std::vector<int>& sigma) {
    int d = static_cast<int>(sigma.size());
    auto compose = [d](const std::vector<int>& a, const std::vector<int>& b) {
        // (a b)(i) = a(b(i))
        std::vector<int> c(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            c[static_cast<std::size_t>(i)] =
                a[static_cast<std::size_t>(b[static_cast<std::size_t>(i)] - 1)];
        return c;
    };
    Int count = 0;
    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 1);
    do {
        if (compose(perm, sigma) == compose(sigma, perm)) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

std::vector<CriterionResult> run_acceptance() {
    return {
        criterion_display(),      criterion_order_independence(), criterion_coefficients(),
        criterion_sign_law(),     criterion_torsion_identity(),   criterion_delta_laws(),
        criterion_ramified(),     criterion_inertia(),            criterion_gerbe(),
        criterion_molien(),       criterion_xi(),
    };
}

} // namespace stabcalc
