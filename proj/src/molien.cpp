#include "stabcalc/molien.hpp"

#include <algorithm>
#include <cstdlib>

#include "stabcalc/errors.hpp"

namespace stabcalc {

int sk_cap() {
    static int cap = [] {
        if (const char* s = std::getenv("STABCALC_MAX_SK")) {
            int v = std::atoi(s);
            if (v > 0) return v;
        }
        return 8;
    }();
    return cap;
}

QMatrix identity_matrix(int n) {
    QMatrix m(static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n), Rat(0)));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return m;
}

QMatrix mat_mul(const QMatrix& a, const QMatrix& b) {
    std::size_t n = a.size();
    QMatrix c(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

Rat mat_trace(const QMatrix& m) {
    Rat t = 0;
    for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
}

int MatrixGroup::dimension() const {
    if (elements.empty()) throw group_closure_error("empty matrix group");
    return static_cast<int>(elements.front().size());
}

void MatrixGroup::validate() const {
    if (elements.empty()) throw group_closure_error("empty matrix group");
    std::size_t n = elements.front().size();
    for (const auto& m : elements) {
        if (m.size() != n) throw group_closure_error("mixed matrix dimensions");
        for (const auto& row : m)
            if (row.size() != n) throw group_closure_error("non-square matrix");
    }
    auto index_of = [&](const QMatrix& m) -> int {
        for (std::size_t i = 0; i < elements.size(); ++i)
            if (elements[i] == m) return static_cast<int>(i);
        return -1;
    };
    if (index_of(identity_matrix(static_cast<int>(n))) < 0)
        throw group_closure_error("identity not in element list");
    for (const auto& a : elements) {
        bool has_inverse = false;
        for (const auto& b : elements) {
            QMatrix ab = mat_mul(a, b);
            if (index_of(ab) < 0)
                throw group_closure_error("element list not closed under product");
            if (ab == identity_matrix(static_cast<int>(n))) has_inverse = true;
        }
        if (!has_inverse) throw group_closure_error("element without inverse in the list");
    }
}

MatrixGroup named_matrix_group(const std::string& name) {
    auto q = [](long v) { return Rat(v); };
    if (name == "trivial2") return MatrixGroup{{identity_matrix(2)}};
    if (name == "pm1") {
        QMatrix neg = {{q(-1), q(0)}, {q(0), q(-1)}};
        return MatrixGroup{{identity_matrix(2), neg}};
    }
    if (name == "s3-standard") {
        // Action on {(a,b,c) : a+b+c = 0} in the basis e1-e2, e2-e3; the
        // permutation of {0, 1, infinity} on the line linearizes to this
        // integer reflection representation.
        QMatrix id = identity_matrix(2);
        QMatrix t12 = {{q(-1), q(1)}, {q(0), q(1)}};   // (1 2)
        QMatrix t23 = {{q(1), q(0)}, {q(1), q(-1)}};   // (2 3)
        QMatrix t13 = {{q(0), q(-1)}, {q(-1), q(0)}};  // (1 3)
        QMatrix c123 = {{q(0), q(-1)}, {q(1), q(-1)}}; // (1 2 3)
        QMatrix c132 = {{q(-1), q(1)}, {q(-1), q(0)}}; // (1 3 2)
        return MatrixGroup{{id, t12, t23, t13, c123, c132}};
    }
    throw domain_error("unknown matrix group: " + name);
}

std::vector<Rat> sym_power_traces(const QMatrix& g, int order) {
    // power sums p_j = tr(g^j), then Newton: d h_d = sum_{j=1}^d p_j h_{d-j}.
    std::vector<Rat> p(static_cast<std::size_t>(order + 1), Rat(0));
    QMatrix power = g;
    for (int j = 1; j <= order; ++j) {
        p[static_cast<std::size_t>(j)] = mat_trace(power);
        if (j < order) power = mat_mul(power, g);
    }
    std::vector<Rat> h(static_cast<std::size_t>(order + 1), Rat(0));
    h[0] = 1;
    for (int d = 1; d <= order; ++d) {
        Rat sum = 0;
        for (int j = 1; j <= d; ++j)
            sum += p[static_cast<std::size_t>(j)] * h[static_cast<std::size_t>(d - j)];
        h[static_cast<std::size_t>(d)] = sum / d;
    }
    return h;
}

std::vector<Rat> molien_series(const MatrixGroup& G, int order) {
    if (order < 0) throw precondition_error("negative truncation order");
    G.validate();
    std::vector<Rat> coeffs(static_cast<std::size_t>(order + 1), Rat(0));
    for (const auto& g : G.elements) {
        auto h = sym_power_traces(g, order);
        for (int d = 0; d <= order; ++d) coeffs[static_cast<std::size_t>(d)] += h[static_cast<std::size_t>(d)];
    }
    Rat size(static_cast<long>(G.elements.size()));
    for (auto& c : coeffs) c /= size;
    return coeffs;
}

std::vector<Rat> rational_function_series(const KExpr& numerator, const KExpr& denominator,
                                          int order) {
    Generator q = series_var("q");
    auto poly_coeffs = [&](const KExpr& e) {
        std::vector<Rat> c(static_cast<std::size_t>(order + 1), Rat(0));
        for (const auto& [m, co] : e.terms()) {
            int deg = m.exponent_of(q);
            for (const auto& [g, ex] : m.factors())
                if (!(g == q))
                    throw precondition_error("rational function must be a polynomial in q");
            if (deg <= order) c[static_cast<std::size_t>(deg)] += co;
        }
        return c;
    };
    auto num = poly_coeffs(numerator);
    auto den = poly_coeffs(denominator);
    if (den[0] == 0)
        throw precondition_error("denominator has zero constant term");
    std::vector<Rat> s(static_cast<std::size_t>(order + 1), Rat(0));
    for (int k = 0; k <= order; ++k) {
        Rat acc = num[static_cast<std::size_t>(k)];
        for (int j = 0; j < k; ++j)
            acc -= s[static_cast<std::size_t>(j)] * den[static_cast<std::size_t>(k - j)];
        s[static_cast<std::size_t>(k)] = acc / den[0];
    }
    return s;
}

bool series_compare(const std::vector<Rat>& coeffs, const KExpr& numerator,
                    const KExpr& denominator, int order) {
    auto s = rational_function_series(numerator, denominator, order);
    for (int k = 0; k <= order; ++k) {
        Rat have = k < static_cast<int>(coeffs.size()) ? coeffs[static_cast<std::size_t>(k)] : Rat(0);
        if (have != s[static_cast<std::size_t>(k)]) return false;
    }
    return true;
}

Rat sk_invariant_multiplicity(const VirtualCharacter& chi) {
    if (chi.k < 1) throw precondition_error("S_k character needs k >= 1");
    if (chi.k > sk_cap())
        throw precondition_error("k exceeds cap " + std::to_string(sk_cap()));
    auto classes = partitions(chi.k);
    if (chi.values.size() != classes.size())
        throw arity_error("character needs one value per conjugacy class");
    Int group_order = factorial(static_cast<unsigned>(chi.k));
    Rat total = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        Int class_size = group_order / centralizer_order(classes[i]);
        total += Rat(class_size) * chi.values[i];
    }
    return total / Rat(group_order);
}

} // namespace stabcalc
