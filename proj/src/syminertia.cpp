#include "stabcalc/syminertia.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stabcalc/errors.hpp"

namespace stabcalc {

int CycleType::total_cycles() const {
    int n = 0;
    for (const auto& [i, ni] : counts) n += ni;
    return n;
}

int CycleType::distinct_lengths() const { return static_cast<int>(counts.size()); }

std::vector<int> CycleType::parts_descending() const {
    std::vector<int> parts;
    for (auto it = counts.rbegin(); it != counts.rend(); ++it)
        for (int c = 0; c < it->second; ++c) parts.push_back(it->first);
    return parts;
}

void CycleType::validate() const {
    if (d < 1) throw domain_error("cycle type needs d >= 1");
    int sum = 0;
    int prev = 0;
    for (const auto& [i, ni] : counts) {
        if (i <= prev) throw domain_error("cycle lengths must strictly increase");
        if (ni < 1) throw domain_error("cycle counts must be positive");
        prev = i;
        sum += i * ni;
    }
    if (sum != d) throw domain_error("cycle lengths must sum to d");
}

CycleType cycle_type_from_parts(int d, const std::vector<int>& parts) {
    std::map<int, int> counts;
    for (int p : parts) ++counts[p];
    CycleType ct;
    ct.d = d;
    ct.counts.assign(counts.begin(), counts.end());
    ct.validate();
    return ct;
}

CycleType cycle_type_of(const std::vector<int>& perm) {
    int d = static_cast<int>(perm.size());
    {
        std::vector<bool> hit(perm.size(), false);
        for (int v : perm) {
            if (v < 1 || v > d || hit[static_cast<std::size_t>(v - 1)])
                throw domain_error("not a permutation of 1..d");
            hit[static_cast<std::size_t>(v - 1)] = true;
        }
    }
    std::vector<bool> seen(perm.size(), false);
    std::vector<int> parts;
    for (int i = 0; i < d; ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        int len = 0;
        int j = i;
        while (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = true;
            ++len;
            j = perm[static_cast<std::size_t>(j)] - 1;
            if (j < 0 || j >= d) throw domain_error("not a permutation of 1..d");
        }
        parts.push_back(len);
    }
    return cycle_type_from_parts(d, parts);
}

static void partitions_rec(int remaining, int max_part, std::vector<int>& current,
                           std::vector<std::vector<int>>& out) {
    if (remaining == 0) {
        out.push_back(current);
        return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        current.push_back(p);
        partitions_rec(remaining - p, p, current, out);
        current.pop_back();
    }
}

std::vector<CycleType> partitions(int d) {
    if (d < 1) throw domain_error("partitions of d need d >= 1");
    std::vector<std::vector<int>> raw;
    std::vector<int> current;
    partitions_rec(d, d, current, raw);
    std::vector<CycleType> out;
    out.reserve(raw.size());
    for (const auto& parts : raw) out.push_back(cycle_type_from_parts(d, parts));
    return out;
}

Int centralizer_order(const CycleType& ct) {
    ct.validate();
    Int order = 1;
    for (const auto& [i, ni] : ct.counts)
        order *= factorial(static_cast<unsigned>(ni)) *
                 int_pow(Int(i), static_cast<unsigned>(ni));
    return order;
}

std::vector<InertiaComponent> inertia_components(int d) {
    std::vector<InertiaComponent> out;
    for (const auto& ct : partitions(d)) {
        InertiaComponent c;
        c.cycle_type = ct;
        c.fixed_locus_rank = ct.total_cycles();
        c.group_descriptor = ct.counts;
        c.centralizer = centralizer_order(ct);
        c.coarse_target_rank = ct.total_cycles();
        for (auto it = ct.counts.rbegin(); it != ct.counts.rend(); ++it) {
            const auto& [len, cnt] = *it;
            c.coarse_factors.push_back(cnt == 1 ? "X" : "Sym^" + std::to_string(cnt) + " X");
        }
        out.push_back(std::move(c));
    }
    return out;
}

long permutation_order(const std::vector<int>& sigma) {
    CycleType ct = cycle_type_of(sigma);
    long l = 1;
    for (const auto& [i, ni] : ct.counts) l = lcm_long(l, i);
    return l;
}

GerbeFiber gerbe_fiber(int r, const std::vector<int>& sigma) {
    if (r < 1) throw precondition_error("gerbe order r must be >= 1");
    CycleType ct = cycle_type_of(sigma);
    long ord = permutation_order(sigma);
    if (r % ord != 0)
        throw precondition_error("order " + std::to_string(ord) + " of sigma does not divide r = " +
                                 std::to_string(r));
    GerbeFiber f;
    f.r = r;
    f.sigma = sigma;
    for (const auto& part : ct.parts_descending())
        f.orbits.emplace_back(part, r / part);
    f.coarse_fiber_count = ct.total_cycles();
    f.representable = (static_cast<long>(r) == ord);
    return f;
}

std::vector<int> permutation_from_cycles(const std::string& text, int d) {
    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 1);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    std::vector<bool> used(static_cast<std::size_t>(d), false);
    skip();
    while (i < text.size()) {
        if (text[i] != '(') throw parse_error("expected '(' in cycle notation", i);
        ++i;
        std::vector<int> cycle;
        while (true) {
            skip();
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (start == i) throw parse_error("expected entry in cycle", i);
            int v = std::atoi(text.substr(start, i - start).c_str());
            if (v < 1 || v > d) throw parse_error("cycle entry out of range", start);
            if (used[static_cast<std::size_t>(v - 1)])
                throw parse_error("repeated entry in cycles", start);
            used[static_cast<std::size_t>(v - 1)] = true;
            cycle.push_back(v);
            skip();
            if (i < text.size() && (text[i] == ',' || text[i] == ' ')) {
                ++i;
                continue;
            }
            if (i < text.size() && text[i] == ')') break;
            if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) continue;
            throw parse_error("expected ')' in cycle notation", i);
        }
        ++i; // ')'
        for (std::size_t j = 0; j < cycle.size(); ++j)
            perm[static_cast<std::size_t>(cycle[j] - 1)] = cycle[(j + 1) % cycle.size()];
        skip();
    }
    return perm;
}

nlohmann::json cycle_type_to_json(const CycleType& ct) {
    nlohmann::json counts = nlohmann::json::array();
    for (const auto& [i, ni] : ct.counts) counts.push_back({{"length", i}, {"count", ni}});
    std::ostringstream text;
    auto parts = ct.parts_descending();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) text << "+";
        text << parts[i];
    }
    return {{"d", ct.d},
            {"counts", counts},
            {"parts", parts},
            {"text", text.str()},
            {"N", ct.total_cycles()},
            {"t", ct.distinct_lengths()}};
}

nlohmann::json inertia_component_to_json(const InertiaComponent& c) {
    nlohmann::json group = nlohmann::json::array();
    for (const auto& [i, ni] : c.group_descriptor) {
        std::ostringstream s;
        s << "S_" << ni;
        if (i > 1) s << " x (Z/" << i << ")^" << ni;
        group.push_back({{"length", i}, {"count", ni}, {"factor", s.str()}});
    }
    return {{"cycle_type", cycle_type_to_json(c.cycle_type)},
            {"fixed_locus_rank", c.fixed_locus_rank},
            {"group", group},
            {"centralizer_order", c.centralizer.get_str()},
            {"coarse_target_rank", c.coarse_target_rank},
            {"coarse_factors", c.coarse_factors}};
}

nlohmann::json gerbe_fiber_to_json(const GerbeFiber& f) {
    nlohmann::json orbits = nlohmann::json::array();
    std::ostringstream text;
    for (std::size_t i = 0; i < f.orbits.size(); ++i) {
        const auto& [len, stab] = f.orbits[i];
        orbits.push_back({{"orbit_length", len}, {"stabilizer_order", stab}});
        if (i) text << " + ";
        text << "B mu_" << stab;
    }
    return {{"r", f.r},
            {"sigma", f.sigma},
            {"orbits", orbits},
            {"stack_fiber", text.str()},
            {"coarse_fiber_count", f.coarse_fiber_count},
            {"representable", f.representable}};
}

} // namespace stabcalc
