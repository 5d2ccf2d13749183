#include "stabcalc/xidata.hpp"

#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stabcalc/errors.hpp"

namespace stabcalc {

long XiData::r_infinity() const {
    long l = 1;
    for (int gi : gamma) l = lcm_long(l, gi);
    return l;
}

int XiData::r_at(int j) const {
    if (j < 0 || j >= n() - 1) throw domain_error("marked point index out of range");
    return j < J_size ? 1 : 2;
}

bool XiReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

XiReport validate_xi(const XiData& x) {
    XiReport rep;
    auto check = [&](const std::string& name, bool pass, const std::string& detail) {
        rep.checks.push_back({name, pass, detail});
    };

    check("nonnegative", x.g >= 0 && x.J_size >= 0 && x.k >= 0, "g, #J, k >= 0");
    check("degree", x.d == x.g + 1,
          "d = " + std::to_string(x.d) + ", g + 1 = " + std::to_string(x.g + 1));

    bool gamma_ok = !x.gamma.empty();
    for (int gi : x.gamma)
        if (gi < 1) gamma_ok = false;
    check("gamma-positive", gamma_ok, "every ramification order over infinity >= 1");

    int gamma_sum = std::accumulate(x.gamma.begin(), x.gamma.end(), 0);
    check("fiber-over-infinity", gamma_sum == x.d,
          "sum gamma = " + std::to_string(gamma_sum) + ", d = " + std::to_string(x.d));

    // 2g - 2 = -2d + sum_P (e_P - 1): each simple point contributes 1, the
    // fiber over infinity contributes sum (gamma_i - 1) = d - #I.
    int lhs = 2 * x.g - 2;
    int rhs = -2 * x.d + x.k + (gamma_sum - x.I_size());
    check("riemann-hurwitz", lhs == rhs,
          std::to_string(lhs) + " vs -2*" + std::to_string(x.d) + " + " + std::to_string(x.k) +
              " + " + std::to_string(gamma_sum - x.I_size()));

    check("marked-point-partition", x.n() == x.J_size + x.k + 1,
          "n = #J + k + 1 = " + std::to_string(x.n()));
    check("upstairs-partition", x.ell() == x.J_size * (x.g + 1) + x.k * x.g + x.I_size(),
          "ell = #J(g+1) + kg + #I = " + std::to_string(x.ell()));
    check("forgotten-count", x.A_size() == x.J_size * x.g + x.k * x.g,
          "ell - R = (#J + k) g = " + std::to_string(x.A_size()));

    // Product of the local monodromies must be trivial; at the level of
    // signs this needs k + sum (gamma_i - 1) even. Full Hurwitz existence is
    // not checked.
    int parity = (x.k + gamma_sum - x.I_size()) % 2;
    check("monodromy-sign-parity", parity == 0,
          parity == 0 ? "sign product trivial (existence itself not checked)"
                      : "odd permutation product; no cover exists");
    return rep;
}

int k_from_dims(int g, int I_size) {
    int k = I_size + 3 * g - 1;
    if (k < 0)
        throw infeasible_error("k = #I + 3g - 1 = " + std::to_string(k) + " is negative");
    return k;
}

Int degree_e(const XiData& x) {
    return factorial(static_cast<unsigned>(x.k)) *
           int_pow(factorial(static_cast<unsigned>(x.g)), static_cast<unsigned>(x.J_size)) *
           int_pow(factorial(static_cast<unsigned>(x.g)), static_cast<unsigned>(x.k));
}

Int gamma_group_order(const XiData& x) {
    // |Gamma| = |S_g|^{#J} * |S_g wr S_k|, with |S_g wr S_k| = |S_g|^k k!.
    Int sg = factorial(static_cast<unsigned>(x.g));
    Int wreath = int_pow(sg, static_cast<unsigned>(x.k)) * factorial(static_cast<unsigned>(x.k));
    return int_pow(sg, static_cast<unsigned>(x.J_size)) * wreath;
}

nlohmann::json xi_to_json(const XiData& x) {
    // gerbe orders marked point by marked point: 1 on J, 2 on the k simple
    // points, lcm(gamma) at infinity
    std::vector<long> orders;
    for (int j = 0; j < x.n() - 1; ++j) orders.push_back(x.r_at(j));
    orders.push_back(x.r_infinity());
    return {{"g", x.g},
            {"d", x.d},
            {"J_size", x.J_size},
            {"k", x.k},
            {"gamma", x.gamma},
            {"n", x.n()},
            {"ell", x.ell()},
            {"R", x.R()},
            {"A_size", x.A_size()},
            {"gerbe_orders", orders},
            {"r_infinity", x.r_infinity()},
            {"degree_e", degree_e(x).get_str()}};
}

nlohmann::json xi_report_to_json(const XiReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"checks", checks}, {"all_pass", r.all_pass()}};
}

} // namespace stabcalc
