#include "stabcalc/kexpr.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include <nlohmann/json.hpp>

namespace stabcalc {

const char* kind_name(GenKind k) {
    switch (k) {
        case GenKind::LineBundle: return "LineBundle";
        case GenKind::NormalBundle: return "NormalBundle";
        case GenKind::StratumTorsion: return "StratumTorsion";
        case GenKind::SeriesVar: return "SeriesVar";
    }
    return "?";
}

Generator generator_from_label(const std::string& label) {
    if (label.rfind("O_{", 0) == 0) return stratum_gen(label);
    if (label.rfind("L_{", 0) == 0) return normal_bundle(label);
    if (label == "q" || label == "t") return series_var(label);
    return line_bundle(label);
}

int max_exponent_cap() {
    static int cap = [] {
        if (const char* s = std::getenv("STABCALC_MAX_EXP")) {
            int v = std::atoi(s);
            if (v > 0) return v;
        }
        return 128;
    }();
    return cap;
}

// ---- Monomial -------------------------------------------------------------

Monomial::Monomial(std::vector<std::pair<Generator, int>> factors)
    : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    validate();
}

Monomial Monomial::single(const Generator& g, int exp) {
    if (exp == 0) return Monomial();
    return Monomial({{g, exp}});
}

void Monomial::validate() const {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto& [g, e] = factors_[i];
        if (e == 0) throw internal_error("zero exponent in monomial");
        if (e < 0 && g.kind != GenKind::LineBundle)
            throw arithmetic_limit_error("negative exponent on non-unit generator " + g.label);
        if (std::abs(e) > max_exponent_cap())
            throw arithmetic_limit_error("exponent " + std::to_string(e) + " on " + g.label +
                                         " exceeds configured bound");
        if (i > 0 && !(factors_[i - 1].first < g))
            throw internal_error("unsorted or duplicate generator in monomial");
    }
}

int Monomial::exponent_of(const Generator& g) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), g,
                               [](const auto& p, const Generator& x) { return p.first < x; });
    if (it != factors_.end() && it->first == g) return it->second;
    return 0;
}

int Monomial::series_degree() const {
    int d = 0;
    for (const auto& [g, e] : factors_)
        if (g.kind == GenKind::SeriesVar) d += e;
    return d;
}

Monomial Monomial::times(const Monomial& other) const {
    std::vector<std::pair<Generator, int>> merged;
    merged.reserve(factors_.size() + other.factors_.size());
    auto a = factors_.begin(), b = other.factors_.begin();
    while (a != factors_.end() || b != other.factors_.end()) {
        if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
            merged.push_back(*a++);
        } else if (a == factors_.end() || b->first < a->first) {
            merged.push_back(*b++);
        } else {
            int e = a->second + b->second;
            if (e != 0) merged.emplace_back(a->first, e);
            ++a;
            ++b;
        }
    }
    Monomial m;
    m.factors_ = std::move(merged);
    m.validate();
    return m;
}

// ---- KExpr ----------------------------------------------------------------

KExpr KExpr::constant(const Rat& c) {
    KExpr e;
    if (c != 0) e.terms_[Monomial::unit()] = c;
    return e;
}

KExpr KExpr::gen(const Generator& g, int exp) {
    KExpr e;
    e.terms_[Monomial::single(g, exp)] = 1;
    return e;
}

KExpr KExpr::term(const Rat& coeff, const Monomial& mono) {
    KExpr e;
    if (coeff != 0) e.terms_[mono] = coeff;
    return e;
}

KExpr KExpr::with_truncation(std::optional<int> order) const {
    if (order && *order < 0) throw precondition_error("negative truncation order");
    KExpr e = *this;
    e.truncation_ = order;
    e.enforce_truncation();
    return e;
}

bool KExpr::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

Rat KExpr::constant_value() const {
    auto it = terms_.find(Monomial::unit());
    return it == terms_.end() ? Rat(0) : it->second;
}

Rat KExpr::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

void KExpr::add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void KExpr::enforce_truncation() {
    if (!truncation_) return;
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first.series_degree() > *truncation_)
            it = terms_.erase(it);
        else
            ++it;
    }
}

static std::optional<int> combine_truncation(std::optional<int> a, std::optional<int> b) {
    if (a && b) return std::min(*a, *b);
    return a ? a : b;
}

KExpr KExpr::add(const KExpr& other) const {
    KExpr r = *this;
    r.truncation_ = combine_truncation(truncation_, other.truncation_);
    for (const auto& [m, c] : other.terms_) r.add_term(m, c);
    r.enforce_truncation();
    return r;
}

KExpr KExpr::sub(const KExpr& other) const { return add(other.neg()); }

KExpr KExpr::neg() const {
    KExpr r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

KExpr KExpr::scale(const Rat& c) const {
    if (c == 0) return KExpr().with_truncation(truncation_);
    KExpr r = *this;
    for (auto& [m, co] : r.terms_) co *= c;
    return r;
}

KExpr KExpr::mul(const KExpr& other) const {
    KExpr r;
    r.truncation_ = combine_truncation(truncation_, other.truncation_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : other.terms_) {
            Monomial m = ma.times(mb);
            if (r.truncation_ && m.series_degree() > *r.truncation_) continue;
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

KExpr KExpr::pow(int k) const {
    if (k < 0) throw arithmetic_limit_error("negative power of an expression");
    if (k > 9999) throw arithmetic_limit_error("power exceeds configured bound");
    KExpr r = KExpr::constant(1).with_truncation(truncation_);
    KExpr base = *this;
    while (k > 0) { // square and multiply
        if (k & 1) r = r.mul(base);
        k >>= 1;
        if (k > 0) base = base.mul(base);
    }
    return r;
}

KExpr operator+(const KExpr& a, const KExpr& b) { return a.add(b); }
KExpr operator-(const KExpr& a, const KExpr& b) { return a.sub(b); }
KExpr operator*(const KExpr& a, const KExpr& b) { return a.mul(b); }
KExpr operator-(const KExpr& a) { return a.neg(); }

static bool is_invertible(const KExpr& e) {
    if (e.terms().size() != 1) return false;
    const auto& [m, c] = *e.terms().begin();
    if (c == 0) return false;
    for (const auto& [g, ex] : m.factors())
        if (g.kind != GenKind::LineBundle) return false;
    return true;
}

static KExpr invert_term(const KExpr& e) {
    const auto& [m, c] = *e.terms().begin();
    std::vector<std::pair<Generator, int>> inv;
    for (const auto& [g, ex] : m.factors()) inv.emplace_back(g, -ex);
    return KExpr::term(Rat(1) / c, Monomial(std::move(inv)));
}

KExpr KExpr::substitute(const std::map<Generator, KExpr>& bindings) const {
    // Substitution is simultaneous. An image may mention its own generator
    // (L -> L - F is the main use), but not a different bound one; that
    // would be a cyclic substitution.
    for (const auto& [g, img] : bindings) {
        for (const auto& [m, c] : img.terms()) {
            for (const auto& [h, e] : m.factors()) {
                if (!(h == g) && bindings.count(h))
                    throw substitution_error("cyclic substitution through " + h.label);
            }
        }
    }
    KExpr result;
    result = result.with_truncation(truncation_);
    for (const auto& [m, c] : terms_) {
        KExpr prod = KExpr::constant(c).with_truncation(truncation_);
        for (const auto& [g, e] : m.factors()) {
            auto it = bindings.find(g);
            if (it == bindings.end()) {
                prod = prod.mul(KExpr::gen(g, e));
                continue;
            }
            KExpr base = it->second;
            int k = e;
            if (k < 0) {
                if (!is_invertible(base))
                    throw substitution_error("generator " + g.label +
                                             " with negative exponent bound to non-invertible expression");
                base = invert_term(base);
                k = -k;
            }
            prod = prod.mul(base.pow(k));
        }
        result = result.add(prod);
    }
    return result;
}

KExpr KExpr::torsion_reduce(const std::map<Generator, KExpr>& relations) const {
    KExpr out;
    out = out.with_truncation(truncation_);
    for (const auto& [m, c] : terms_) {
        KExpr piece = KExpr::constant(c);
        std::vector<std::pair<Generator, int>> rest;
        for (const auto& [g, e] : m.factors()) {
            if (g.kind == GenKind::StratumTorsion && e >= 2) {
                auto it = relations.find(g);
                if (it == relations.end())
                    throw unresolved_relation_error("no relation for squared torsion generator " +
                                                    g.label);
                piece = piece.mul(it->second.pow(e - 1));
                rest.emplace_back(g, 1);
            } else {
                rest.emplace_back(g, e);
            }
        }
        piece = piece.mul(KExpr::term(Rat(1), Monomial(std::move(rest))));
        out = out.add(piece);
    }
    // Cofactors may themselves contain torsion generators; iterate to a
    // fixpoint with a hard cap.
    if (out != *this) {
        for (int round = 0; round < 64; ++round) {
            KExpr next = out.torsion_reduce(relations);
            if (next == out) return out;
            out = next;
        }
        throw unresolved_relation_error("torsion reduction did not reach a fixpoint");
    }
    return out;
}

std::vector<Generator> KExpr::generators() const {
    std::vector<Generator> gens;
    for (const auto& [m, c] : terms_)
        for (const auto& [g, e] : m.factors()) gens.push_back(g);
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return gens;
}

int KExpr::degree_in(const Generator& g) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exponent_of(g));
    return d;
}

std::map<int, KExpr> KExpr::collect(const Generator& g) const {
    std::map<int, KExpr> by_deg;
    for (const auto& [m, c] : terms_) {
        int e = m.exponent_of(g);
        std::vector<std::pair<Generator, int>> rest;
        for (const auto& [h, ex] : m.factors())
            if (!(h == g)) rest.emplace_back(h, ex);
        by_deg[e] = by_deg[e].add(KExpr::term(c, Monomial(std::move(rest))));
    }
    return by_deg;
}

// ---- serialization ---------------------------------------------------------

std::string serialize(const KExpr& e) {
    std::ostringstream out;
    if (e.terms().empty()) {
        out << "0";
    } else {
        bool first = true;
        for (const auto& [m, c] : e.terms()) {
            if (!first) out << " + ";
            first = false;
            out << rat_to_string(c);
            for (const auto& [g, ex] : m.factors()) {
                out << "*" << g.label;
                if (ex != 1) out << "^" << ex;
            }
        }
    }
    if (e.truncation()) out << " @" << *e.truncation();
    return out.str();
}

namespace {

// Recursive-descent reader for the expression grammar. Accepts both the
// canonical writer output and hand-written input like "(L1+1)*(L1-1)" or
// "1/((1-q^2)(1-q^3))" (implicit multiplication, rational-literal division).
class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    KExpr parse() {
        KExpr e = parse_sum();
        skip_ws();
        if (peek() == '@') {
            ++pos_;
            long n = parse_integer();
            if (n < 0) fail("negative truncation order");
            e = e.with_truncation(static_cast<int>(n));
            skip_ws();
        }
        if (pos_ != s_.size()) fail("trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, pos_); }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    // small integers: exponents and truncation orders
    long parse_integer() {
        skip_ws();
        std::size_t start = pos_;
        if (peek() == '-' || peek() == '+') ++pos_;
        std::size_t digits = pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ - digits > 9) fail("integer literal too large here");
        return std::strtol(s_.substr(start, pos_ - start).c_str(), nullptr, 10);
    }

    // coefficient literals are arbitrary-precision
    std::string parse_digit_run() {
        skip_ws();
        std::size_t start = pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected number");
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    KExpr parse_sum() {
        KExpr e = parse_product();
        while (true) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                e = e.add(parse_product());
            } else if (peek() == '-') {
                ++pos_;
                e = e.sub(parse_product());
            } else {
                return e;
            }
        }
    }

    KExpr parse_product() {
        KExpr e = parse_factor();
        while (true) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                e = e.mul(parse_factor());
            } else if (peek() == '/') {
                ++pos_;
                KExpr d = parse_factor();
                if (!is_invertible(d))
                    fail("division by a non-invertible expression");
                e = e.mul(invert_term(d));
            } else if (peek() == '(') {
                e = e.mul(parse_factor()); // implicit multiplication
            } else {
                return e;
            }
        }
    }

    KExpr parse_factor() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return parse_factor().neg();
        }
        KExpr base = parse_atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            long k = parse_integer();
            if (k >= 0) return base.pow(static_cast<int>(k));
            if (!is_invertible(base)) fail("negative power of a non-invertible expression");
            return invert_term(base).pow(static_cast<int>(-k));
        }
        return base;
    }

    KExpr parse_atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = peek();
        if (c == '(') {
            ++pos_;
            KExpr e = parse_sum();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = parse_digit_run();
            // A '/' directly after an integer literal and followed by an
            // integer reads as a rational literal; anything else is left for
            // the product level.
            std::size_t save = pos_;
            skip_ws();
            if (peek() == '/') {
                ++pos_;
                skip_ws();
                if (std::isdigit(static_cast<unsigned char>(peek()))) {
                    std::string den = parse_digit_run();
                    if (den.find_first_not_of('0') == std::string::npos)
                        fail("zero denominator");
                    return KExpr::constant(rat_from_string(num + "/" + den));
                }
                pos_ = save;
            } else {
                pos_ = save;
            }
            return KExpr::constant(rat_from_string(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_generator();
        fail("unexpected character");
    }

    KExpr parse_generator() {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '{') {
            // braced label: read to the matching brace
            int depth = 0;
            while (pos_ < s_.size()) {
                if (s_[pos_] == '{') ++depth;
                if (s_[pos_] == '}') {
                    --depth;
                    if (depth == 0) {
                        ++pos_;
                        break;
                    }
                }
                ++pos_;
            }
            if (depth != 0) fail("unbalanced braces in generator label");
        }
        std::string label = s_.substr(start, pos_ - start);
        if (label.empty()) fail("empty generator label");
        return KExpr::gen(generator_from_label(label));
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace

KExpr deserialize(const std::string& text) { return Parser(text).parse(); }

nlohmann::json kexpr_to_json(const KExpr& e) {
    nlohmann::json j;
    std::map<std::string, std::string> gens;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : e.terms()) {
        nlohmann::json mono = nlohmann::json::array();
        for (const auto& [g, ex] : m.factors()) {
            gens[g.label] = kind_name(g.kind);
            mono.push_back({{"gen", g.label}, {"exp", ex}});
        }
        terms.push_back({{"coeff", rat_to_string(c)}, {"monomial", mono}});
    }
    nlohmann::json gen_list = nlohmann::json::array();
    for (const auto& [label, kind] : gens)
        gen_list.push_back({{"label", label}, {"kind", kind}});
    j["generators"] = gen_list;
    j["terms"] = terms;
    if (e.truncation())
        j["truncation"] = *e.truncation();
    else
        j["truncation"] = nullptr;
    j["text"] = serialize(e);
    return j;
}

KExpr kexpr_from_json(const nlohmann::json& j) {
    KExpr e;
    for (const auto& t : j.at("terms")) {
        std::vector<std::pair<Generator, int>> factors;
        for (const auto& f : t.at("monomial"))
            factors.emplace_back(generator_from_label(f.at("gen").get<std::string>()),
                                 f.at("exp").get<int>());
        e = e.add(KExpr::term(rat_from_string(t.at("coeff").get<std::string>()),
                              Monomial(std::move(factors))));
    }
    if (j.contains("truncation") && !j.at("truncation").is_null())
        e = e.with_truncation(j.at("truncation").get<int>());
    return e;
}

} // namespace stabcalc
