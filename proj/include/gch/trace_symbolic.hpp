#ifndef GCH_TRACE_SYMBOLIC_HPP
#define GCH_TRACE_SYMBOLIC_HPP

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gch/graded_identities.hpp"

namespace gch {

/// Formal trace symbols. No relations are imposed: tr(A^r B A^s) symbols with
/// equal r+s stay distinct even though their concrete values coincide.
enum class SymbolKind : uint8_t {
    even_a,    ///< tr(A^i), i >= 1
    even_b2,   ///< tr(B^{2i}), i >= 1
    mixed_odd, ///< tr(A^r B A^s), r,s >= 0; (0,0) denotes tr(B)
    odd_b      ///< tr(B^t), t >= 1 odd
};

struct TraceSymbol {
    SymbolKind kind = SymbolKind::even_a;
    int p1 = 0;
    int p2 = 0;

    static TraceSymbol even_a(int i) {
        if (i < 1) throw std::invalid_argument("TraceSymbol: tr(A^i) needs i >= 1");
        return {SymbolKind::even_a, i, 0};
    }
    static TraceSymbol even_b2(int i) {
        if (i < 1) throw std::invalid_argument("TraceSymbol: tr(B^{2i}) needs i >= 1");
        return {SymbolKind::even_b2, i, 0};
    }
    static TraceSymbol mixed_odd(int r, int s) {
        if (r < 0 || s < 0) throw std::invalid_argument("TraceSymbol: tr(A^r B A^s) needs r,s >= 0");
        return {SymbolKind::mixed_odd, r, s};
    }
    static TraceSymbol odd_b(int t) {
        if (t < 1 || t % 2 == 0) throw std::invalid_argument("TraceSymbol: tr(B^t) needs odd t >= 1");
        return {SymbolKind::odd_b, t, 0};
    }

    bool is_even() const { return kind == SymbolKind::even_a || kind == SymbolKind::even_b2; }

    friend auto operator<=>(const TraceSymbol&, const TraceSymbol&) = default;
};

/// Product of even symbols with positive exponents, symbols strictly
/// ascending. The empty monomial is 1.
struct EvenMonomial {
    std::vector<std::pair<TraceSymbol, int>> factors;

    int degree() const {
        int d = 0;
        for (const auto& [s, e] : factors) d += e;
        return d;
    }

    friend bool operator==(const EvenMonomial&, const EvenMonomial&) = default;
};

/// Graded order: total degree first, then lexicographic on the factor list.
inline bool monomial_less(const EvenMonomial& a, const EvenMonomial& b) {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.factors < b.factors;
}

struct EvenMonomialLess {
    bool operator()(const EvenMonomial& a, const EvenMonomial& b) const { return monomial_less(a, b); }
};

inline EvenMonomial monomial_mul(const EvenMonomial& a, const EvenMonomial& b) {
    EvenMonomial out;
    auto i = a.factors.begin();
    auto j = b.factors.begin();
    while (i != a.factors.end() && j != b.factors.end()) {
        if (i->first < j->first) {
            out.factors.push_back(*i++);
        } else if (j->first < i->first) {
            out.factors.push_back(*j++);
        } else {
            out.factors.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    out.factors.insert(out.factors.end(), i, a.factors.end());
    out.factors.insert(out.factors.end(), j, b.factors.end());
    return out;
}

/// Commutative polynomial in even trace symbols with exact rational
/// coefficients; canonical form (sorted monomials, no zero coefficients).
class EvenTracePoly {
public:
    using Term = std::pair<EvenMonomial, Rational>;

    EvenTracePoly() = default;

    static EvenTracePoly constant(const Rational& c) {
        EvenTracePoly p;
        if (c != 0) p.terms_.emplace_back(EvenMonomial{}, c);
        return p;
    }

    static EvenTracePoly symbol(const TraceSymbol& s) {
        if (!s.is_even())
            throw std::invalid_argument("EvenTracePoly: only even trace symbols are admitted");
        EvenTracePoly p;
        p.terms_.emplace_back(EvenMonomial{{{s, 1}}}, 1);
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    EvenTracePoly operator-() const {
        EvenTracePoly p;
        p.terms_.reserve(terms_.size());
        for (const auto& [m, c] : terms_) p.terms_.emplace_back(m, -c);
        return p;
    }

    friend EvenTracePoly operator+(const EvenTracePoly& x, const EvenTracePoly& y) {
        std::map<EvenMonomial, Rational, EvenMonomialLess> acc(x.terms_.begin(), x.terms_.end());
        for (const auto& [m, c] : y.terms_) {
            auto [it, inserted] = acc.try_emplace(m, c);
            if (!inserted) {
                it->second += c;
                if (it->second == 0) acc.erase(it);
            }
        }
        return from_map(acc);
    }

    friend EvenTracePoly operator-(const EvenTracePoly& x, const EvenTracePoly& y) { return x + (-y); }

    friend EvenTracePoly operator*(const EvenTracePoly& x, const EvenTracePoly& y) {
        std::map<EvenMonomial, Rational, EvenMonomialLess> acc;
        for (const auto& [ma, ca] : x.terms_)
            for (const auto& [mb, cb] : y.terms_) {
                EvenMonomial m = monomial_mul(ma, mb);
                Rational c = ca * cb;
                auto [it, inserted] = acc.try_emplace(std::move(m), c);
                if (!inserted) {
                    it->second += c;
                    if (it->second == 0) acc.erase(it);
                }
            }
        return from_map(acc);
    }

    friend EvenTracePoly operator*(const Rational& q, const EvenTracePoly& x) {
        if (q == 0) return {};
        EvenTracePoly p;
        p.terms_.reserve(x.terms_.size());
        for (const auto& [m, c] : x.terms_) p.terms_.emplace_back(m, q * c);
        return p;
    }

    friend EvenTracePoly operator/(const EvenTracePoly& x, const Rational& q) {
        if (q == 0) throw std::invalid_argument("EvenTracePoly: division by zero");
        return (Rational(1) / q) * x;
    }

    friend bool operator==(const EvenTracePoly&, const EvenTracePoly&) = default;

private:
    static EvenTracePoly from_map(const std::map<EvenMonomial, Rational, EvenMonomialLess>& acc) {
        EvenTracePoly p;
        p.terms_.assign(acc.begin(), acc.end());
        return p;
    }

    std::vector<Term> terms_;
};

/// Finite map odd-symbol -> even-polynomial coefficient; linearity in odd
/// symbols is enforced by the type, since multiplication only admits even
/// polynomials.
class OddTraceLinear {
public:
    using Term = std::pair<TraceSymbol, EvenTracePoly>;

    OddTraceLinear() = default;

    static OddTraceLinear symbol(const TraceSymbol& s) {
        return single(s, EvenTracePoly::constant(1));
    }

    static OddTraceLinear single(const TraceSymbol& s, const EvenTracePoly& coeff) {
        if (s.is_even())
            throw std::invalid_argument("OddTraceLinear: only odd trace symbols are admitted");
        OddTraceLinear x;
        if (!coeff.is_zero()) x.terms_.emplace_back(s, coeff);
        return x;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    OddTraceLinear operator-() const {
        OddTraceLinear x;
        x.terms_.reserve(terms_.size());
        for (const auto& [s, p] : terms_) x.terms_.emplace_back(s, -p);
        return x;
    }

    friend OddTraceLinear operator+(const OddTraceLinear& x, const OddTraceLinear& y) {
        std::map<TraceSymbol, EvenTracePoly> acc(x.terms_.begin(), x.terms_.end());
        for (const auto& [s, p] : y.terms_) {
            auto [it, inserted] = acc.try_emplace(s, p);
            if (!inserted) {
                it->second = it->second + p;
                if (it->second.is_zero()) acc.erase(it);
            }
        }
        OddTraceLinear out;
        out.terms_.assign(acc.begin(), acc.end());
        return out;
    }

    friend OddTraceLinear operator-(const OddTraceLinear& x, const OddTraceLinear& y) { return x + (-y); }

    friend OddTraceLinear operator*(const EvenTracePoly& p, const OddTraceLinear& x) {
        OddTraceLinear out;
        for (const auto& [s, c] : x.terms_) {
            EvenTracePoly prod = p * c;
            if (!prod.is_zero()) out.terms_.emplace_back(s, std::move(prod));
        }
        return out;
    }

    friend OddTraceLinear operator/(const OddTraceLinear& x, const Rational& q) {
        if (q == 0) throw std::invalid_argument("OddTraceLinear: division by zero");
        return EvenTracePoly::constant(Rational(1) / q) * x;
    }

    friend bool operator==(const OddTraceLinear&, const OddTraceLinear&) = default;

private:
    std::vector<Term> terms_;
};

/// A trace-polynomial value: even polynomial part plus odd-linear part. Every
/// identity coefficient populates exactly one of the two.
struct TraceExpr {
    EvenTracePoly even;
    OddTraceLinear odd;

    bool is_zero() const { return even.is_zero() && odd.is_zero(); }

    static TraceExpr from_even(EvenTracePoly p) { return {std::move(p), {}}; }
    static TraceExpr from_odd(OddTraceLinear x) { return {{}, std::move(x)}; }

    friend bool operator==(const TraceExpr&, const TraceExpr&) = default;
};

enum class IdentityKind : uint8_t { thm21, thm23 };

enum class PatternKind : uint8_t {
    unit,       ///< I_n
    a_power,    ///< A^k, k >= 1
    mixed_word, ///< A^{k-1}B + A^{k-2}BA + ... + BA^{k-1}, k >= 1
    b_power     ///< B^k, k >= 1
};

struct PowerPattern {
    PatternKind kind = PatternKind::unit;
    int k = 0;

    friend bool operator==(const PowerPattern&, const PowerPattern&) = default;
};

struct IdentityTerm {
    PowerPattern pattern;
    TraceExpr coeff;

    friend bool operator==(const IdentityTerm&, const IdentityTerm&) = default;
};

/// A displayed identity: the coefficient/pattern term list in display order,
/// plus the full coefficient tables it was assembled from. Zero coefficients
/// are omitted from the term list, so the last term carries the leading
/// power.
struct SymbolicIdentity {
    IdentityKind kind = IdentityKind::thm21;
    int n = 0;
    std::vector<IdentityTerm> terms;
    std::vector<EvenTracePoly> alpha; ///< alpha_0..alpha_n (gamma for thm23)
    std::vector<OddTraceLinear> beta; ///< beta_0..beta_n (delta for thm23)

    friend bool operator==(const SymbolicIdentity&, const SymbolicIdentity&) = default;
};

/// Runs the alpha/beta recursions with formal symbols, top-down from
/// alpha_n = 1, beta_n = 0, and assembles the displayed term list
///   beta_0 I_n + sum_k { beta_k A^k + alpha_k (A^{k-1}B + ... + BA^{k-1}) }.
inline SymbolicIdentity symbolic_theorem21(int n) {
    if (n < 1) throw std::invalid_argument("symbolic_theorem21: n must be >= 1");

    std::vector<EvenTracePoly> alpha(static_cast<size_t>(n) + 1);
    alpha[static_cast<size_t>(n)] = EvenTracePoly::constant(1);
    for (int k = n - 1; k >= 0; --k) {
        EvenTracePoly acc;
        for (int i = 1; i <= n - k; ++i)
            acc = acc + alpha[static_cast<size_t>(k + i)] * EvenTracePoly::symbol(TraceSymbol::even_a(i));
        alpha[static_cast<size_t>(k)] = acc / Rational(-(n - k));
    }

    std::vector<OddTraceLinear> beta(static_cast<size_t>(n) + 1);
    for (int k = n - 1; k >= 0; --k) {
        OddTraceLinear acc;
        for (int i = 1; i <= n - k; ++i)
            acc = acc + EvenTracePoly::symbol(TraceSymbol::even_a(i)) * beta[static_cast<size_t>(k + i)];
        for (int r = 0; r <= n - k - 1; ++r)
            for (int s = 0; r + s <= n - k - 1; ++s)
                acc = acc + OddTraceLinear::single(TraceSymbol::mixed_odd(r, s),
                                                   alpha[static_cast<size_t>(k + r + s + 1)]);
        beta[static_cast<size_t>(k)] = acc / Rational(-(n - k));
    }

    SymbolicIdentity id{IdentityKind::thm21, n, {}, alpha, beta};
    if (!beta[0].is_zero())
        id.terms.push_back({{PatternKind::unit, 0}, TraceExpr::from_odd(beta[0])});
    for (int k = 1; k <= n; ++k) {
        if (!beta[static_cast<size_t>(k)].is_zero())
            id.terms.push_back({{PatternKind::a_power, k}, TraceExpr::from_odd(beta[static_cast<size_t>(k)])});
        if (!alpha[static_cast<size_t>(k)].is_zero())
            id.terms.push_back(
                {{PatternKind::mixed_word, k}, TraceExpr::from_even(alpha[static_cast<size_t>(k)])});
    }
    return id;
}

/// gamma/delta recursions over tr(B^{2i}) and tr(B^{2r+2s+1}) symbols; term
/// list delta_0 I_n + sum_k { k gamma_k B^{2k-1} + delta_k B^{2k} }, ending at
/// the leading term n B^{2n-1}.
inline SymbolicIdentity symbolic_theorem23(int n) {
    if (n < 1) throw std::invalid_argument("symbolic_theorem23: n must be >= 1");

    std::vector<EvenTracePoly> gamma(static_cast<size_t>(n) + 1);
    gamma[static_cast<size_t>(n)] = EvenTracePoly::constant(1);
    for (int k = n - 1; k >= 0; --k) {
        EvenTracePoly acc;
        for (int i = 1; i <= n - k; ++i)
            acc = acc + gamma[static_cast<size_t>(k + i)] * EvenTracePoly::symbol(TraceSymbol::even_b2(i));
        gamma[static_cast<size_t>(k)] = acc / Rational(-(n - k));
    }

    std::vector<OddTraceLinear> delta(static_cast<size_t>(n) + 1);
    for (int k = n - 1; k >= 0; --k) {
        OddTraceLinear acc;
        for (int i = 1; i <= n - k; ++i)
            acc = acc + EvenTracePoly::symbol(TraceSymbol::even_b2(i)) * delta[static_cast<size_t>(k + i)];
        for (int r = 0; r <= n - k - 1; ++r)
            for (int s = 0; r + s <= n - k - 1; ++s)
                acc = acc + OddTraceLinear::single(TraceSymbol::odd_b(2 * r + 2 * s + 1),
                                                   gamma[static_cast<size_t>(k + r + s + 1)]);
        delta[static_cast<size_t>(k)] = acc / Rational(-(n - k));
    }

    SymbolicIdentity id{IdentityKind::thm23, n, {}, gamma, delta};
    if (!delta[0].is_zero())
        id.terms.push_back({{PatternKind::unit, 0}, TraceExpr::from_odd(delta[0])});
    for (int k = 1; k <= n; ++k) {
        EvenTracePoly odd_coeff = Rational(k) * gamma[static_cast<size_t>(k)];
        if (!odd_coeff.is_zero())
            id.terms.push_back({{PatternKind::b_power, 2 * k - 1}, TraceExpr::from_even(odd_coeff)});
        if (!delta[static_cast<size_t>(k)].is_zero())
            id.terms.push_back(
                {{PatternKind::b_power, 2 * k}, TraceExpr::from_odd(delta[static_cast<size_t>(k)])});
    }
    return id;
}

// --- LaTeX emitter ----------------------------------------------------------

namespace detail {

inline std::string latex_power(const std::string& base, int k) {
    if (k == 0) return "";
    if (k == 1) return base;
    return base + "^{" + std::to_string(k) + "}";
}

inline std::string latex_symbol_arg(const TraceSymbol& s) {
    switch (s.kind) {
        case SymbolKind::even_a: return latex_power("A", s.p1);
        case SymbolKind::even_b2: return latex_power("B", 2 * s.p1);
        case SymbolKind::mixed_odd: return latex_power("A", s.p1) + "B" + latex_power("A", s.p2);
        case SymbolKind::odd_b: return latex_power("B", s.p1);
    }
    return "?";
}

inline std::string latex_trace(const TraceSymbol& s, int exp) {
    std::string tr = "\\mathrm{tr}";
    if (exp >= 2) tr += "^{" + std::to_string(exp) + "}";
    return tr + "(" + latex_symbol_arg(s) + ")";
}

inline std::string latex_monomial(const EvenMonomial& m) {
    std::string out;
    for (const auto& [s, e] : m.factors) out += latex_trace(s, e);
    return out;
}

inline std::string latex_rational_magnitude(const Rational& q) {
    const Rational a = q < 0 ? Rational(-q) : q;
    if (denominator(a) == 1) return rational_to_string(a);
    return "\\frac{" + numerator(a).str() + "}{" + denominator(a).str() + "}";
}

/// One flattened summand: rational coefficient times a symbol string. Renders
/// as sign + magnitude + symbols, omitting a magnitude of 1 before symbols.
inline std::string latex_signed(const Rational& coeff, const std::string& symbols, bool leading) {
    std::string out;
    if (coeff < 0)
        out += "-";
    else if (!leading)
        out += "+";
    const Rational a = coeff < 0 ? Rational(-coeff) : coeff;
    if (a != 1 || symbols.empty()) out += latex_rational_magnitude(coeff);
    out += symbols;
    return out;
}

/// Flattens a coefficient into (rational, symbol-string) summands in display
/// order: even monomials first, then odd terms ordered by symbol with each
/// even cofactor distributed.
inline std::vector<std::pair<Rational, std::string>> flatten_coeff(const TraceExpr& e) {
    std::vector<std::pair<Rational, std::string>> out;
    for (const auto& [m, c] : e.even.terms()) out.emplace_back(c, latex_monomial(m));
    for (const auto& [s, poly] : e.odd.terms())
        for (const auto& [m, c] : poly.terms()) out.emplace_back(c, latex_monomial(m) + latex_trace(s, 1));
    return out;
}

inline std::string latex_pattern(const PowerPattern& p, int n) {
    switch (p.kind) {
        case PatternKind::unit: return "I_{" + std::to_string(n) + "}";
        case PatternKind::a_power: return latex_power("A", p.k);
        case PatternKind::b_power: return latex_power("B", p.k);
        case PatternKind::mixed_word: {
            if (p.k == 1) return "B";
            std::string out = "\\left(";
            for (int j = 0; j <= p.k - 1; ++j) {
                if (j > 0) out += "+";
                out += latex_power("A", p.k - 1 - j) + "B" + latex_power("A", j);
            }
            out += "\\right)";
            return out;
        }
    }
    return "?";
}

inline std::string emit_latex(const SymbolicIdentity& id) {
    std::string out;
    for (const auto& term : id.terms) {
        const auto parts = flatten_coeff(term.coeff);
        const std::string pattern = latex_pattern(term.pattern, id.n);
        if (parts.empty()) continue;
        if (parts.size() == 1) {
            out += latex_signed(parts[0].first, parts[0].second + pattern, out.empty());
        } else {
            if (!out.empty()) out += "+";
            out += "\\left\\{";
            for (size_t i = 0; i < parts.size(); ++i)
                out += latex_signed(parts[i].first, parts[i].second, i == 0);
            out += "\\right\\}" + pattern;
        }
    }
    if (out.empty()) out = "0";
    return out + "=0";
}

} // namespace detail

// --- JSON emitter and parser -------------------------------------------------

namespace detail {

inline nlohmann::ordered_json symbol_to_json(const TraceSymbol& s) {
    switch (s.kind) {
        case SymbolKind::even_a: return {{"kind", "tr_a"}, {"i", s.p1}};
        case SymbolKind::even_b2: return {{"kind", "tr_b2"}, {"i", s.p1}};
        case SymbolKind::mixed_odd: return {{"kind", "tr_aba"}, {"r", s.p1}, {"s", s.p2}};
        case SymbolKind::odd_b: return {{"kind", "tr_b"}, {"t", s.p1}};
    }
    throw std::logic_error("symbol_to_json: unreachable");
}

inline TraceSymbol symbol_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "tr_a") return TraceSymbol::even_a(j.at("i").get<int>());
    if (kind == "tr_b2") return TraceSymbol::even_b2(j.at("i").get<int>());
    if (kind == "tr_aba") return TraceSymbol::mixed_odd(j.at("r").get<int>(), j.at("s").get<int>());
    if (kind == "tr_b") return TraceSymbol::odd_b(j.at("t").get<int>());
    throw std::invalid_argument("symbol_from_json: unknown kind '" + kind + "'");
}

inline nlohmann::ordered_json even_poly_to_json(const EvenTracePoly& p) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& [m, c] : p.terms()) {
        nlohmann::ordered_json mono = nlohmann::ordered_json::array();
        for (const auto& [s, e] : m.factors)
            mono.push_back(nlohmann::ordered_json{{"symbol", symbol_to_json(s)}, {"exp", e}});
        out.push_back(nlohmann::ordered_json{{"coeff", rational_to_string(c)}, {"monomial", std::move(mono)}});
    }
    return out;
}

inline EvenTracePoly even_poly_from_json(const nlohmann::json& j) {
    EvenTracePoly p;
    for (const auto& t : j) {
        EvenTracePoly mono = EvenTracePoly::constant(parse_rational(t.at("coeff").get<std::string>()));
        for (const auto& f : t.at("monomial")) {
            const TraceSymbol s = symbol_from_json(f.at("symbol"));
            const int e = f.at("exp").get<int>();
            for (int i = 0; i < e; ++i) mono = mono * EvenTracePoly::symbol(s);
        }
        p = p + mono;
    }
    return p;
}

inline nlohmann::ordered_json odd_linear_to_json(const OddTraceLinear& x) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& [s, p] : x.terms())
        out.push_back(nlohmann::ordered_json{{"symbol", symbol_to_json(s)}, {"coeff", even_poly_to_json(p)}});
    return out;
}

inline OddTraceLinear odd_linear_from_json(const nlohmann::json& j) {
    OddTraceLinear x;
    for (const auto& t : j)
        x = x + OddTraceLinear::single(symbol_from_json(t.at("symbol")), even_poly_from_json(t.at("coeff")));
    return x;
}

inline const char* pattern_kind_name(PatternKind k) {
    switch (k) {
        case PatternKind::unit: return "unit";
        case PatternKind::a_power: return "a_power";
        case PatternKind::mixed_word: return "mixed_word";
        case PatternKind::b_power: return "b_power";
    }
    throw std::logic_error("pattern_kind_name: unreachable");
}

inline PatternKind pattern_kind_from_name(const std::string& name) {
    if (name == "unit") return PatternKind::unit;
    if (name == "a_power") return PatternKind::a_power;
    if (name == "mixed_word") return PatternKind::mixed_word;
    if (name == "b_power") return PatternKind::b_power;
    throw std::invalid_argument("identity_from_json: unknown pattern kind '" + name + "'");
}

inline nlohmann::ordered_json identity_to_json(const SymbolicIdentity& id) {
    nlohmann::ordered_json out;
    out["kind"] = id.kind == IdentityKind::thm21 ? "thm21" : "thm23";
    out["n"] = id.n;
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& t : id.terms) {
        nlohmann::ordered_json jt;
        jt["pattern"] = {{"kind", pattern_kind_name(t.pattern.kind)}, {"k", t.pattern.k}};
        jt["coeff"] = {{"even", even_poly_to_json(t.coeff.even)}, {"odd", odd_linear_to_json(t.coeff.odd)}};
        terms.push_back(std::move(jt));
    }
    out["terms"] = std::move(terms);
    nlohmann::ordered_json alpha = nlohmann::ordered_json::array();
    for (const auto& p : id.alpha) alpha.push_back(even_poly_to_json(p));
    out["alpha"] = std::move(alpha);
    nlohmann::ordered_json beta = nlohmann::ordered_json::array();
    for (const auto& x : id.beta) beta.push_back(odd_linear_to_json(x));
    out["beta"] = std::move(beta);
    return out;
}

} // namespace detail

inline SymbolicIdentity identity_from_json(const nlohmann::json& j) {
    SymbolicIdentity id;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "thm21")
        id.kind = IdentityKind::thm21;
    else if (kind == "thm23")
        id.kind = IdentityKind::thm23;
    else
        throw std::invalid_argument("identity_from_json: unknown identity kind '" + kind + "'");
    id.n = j.at("n").get<int>();
    for (const auto& t : j.at("terms")) {
        IdentityTerm term;
        term.pattern.kind = detail::pattern_kind_from_name(t.at("pattern").at("kind").get<std::string>());
        term.pattern.k = t.at("pattern").at("k").get<int>();
        term.coeff.even = detail::even_poly_from_json(t.at("coeff").at("even"));
        term.coeff.odd = detail::odd_linear_from_json(t.at("coeff").at("odd"));
        id.terms.push_back(std::move(term));
    }
    for (const auto& p : j.at("alpha")) id.alpha.push_back(detail::even_poly_from_json(p));
    for (const auto& x : j.at("beta")) id.beta.push_back(detail::odd_linear_from_json(x));
    return id;
}

// --- S-expression emitter ----------------------------------------------------

namespace detail {

inline std::string sexpr_symbol(const TraceSymbol& s) {
    switch (s.kind) {
        case SymbolKind::even_a: return "(tr-a " + std::to_string(s.p1) + ")";
        case SymbolKind::even_b2: return "(tr-b2 " + std::to_string(s.p1) + ")";
        case SymbolKind::mixed_odd:
            return "(tr-aba " + std::to_string(s.p1) + " " + std::to_string(s.p2) + ")";
        case SymbolKind::odd_b: return "(tr-b " + std::to_string(s.p1) + ")";
    }
    throw std::logic_error("sexpr_symbol: unreachable");
}

inline std::string sexpr_poly(const EvenTracePoly& p) {
    std::string out = "(poly";
    for (const auto& [m, c] : p.terms()) {
        out += " (mono " + rational_to_string(c);
        for (const auto& [s, e] : m.factors)
            out += " (pow " + sexpr_symbol(s) + " " + std::to_string(e) + ")";
        out += ")";
    }
    return out + ")";
}

inline std::string sexpr_odd(const OddTraceLinear& x) {
    std::string out = "(odd";
    for (const auto& [s, p] : x.terms()) out += " (oterm " + sexpr_symbol(s) + " " + sexpr_poly(p) + ")";
    return out + ")";
}

inline std::string sexpr_pattern(const PowerPattern& p) {
    switch (p.kind) {
        case PatternKind::unit: return "(unit)";
        case PatternKind::a_power: return "(a-pow " + std::to_string(p.k) + ")";
        case PatternKind::mixed_word: return "(word " + std::to_string(p.k) + ")";
        case PatternKind::b_power: return "(b-pow " + std::to_string(p.k) + ")";
    }
    throw std::logic_error("sexpr_pattern: unreachable");
}

inline std::string emit_sexpr(const SymbolicIdentity& id) {
    std::string out = "(identity ";
    out += id.kind == IdentityKind::thm21 ? "thm21" : "thm23";
    out += " " + std::to_string(id.n) + "\n  (alpha";
    for (const auto& p : id.alpha) out += "\n    " + sexpr_poly(p);
    out += ")\n  (beta";
    for (const auto& x : id.beta) out += "\n    " + sexpr_odd(x);
    out += ")\n  (terms";
    for (const auto& t : id.terms) {
        out += "\n    (term " + sexpr_pattern(t.pattern) + " (expr " + sexpr_poly(t.coeff.even) + " " +
               sexpr_odd(t.coeff.odd) + "))";
    }
    return out + "))";
}

} // namespace detail

enum class EmitFormat : uint8_t { latex, sexpr, json };

inline std::string emit(const SymbolicIdentity& id, EmitFormat format) {
    switch (format) {
        case EmitFormat::latex: return detail::emit_latex(id);
        case EmitFormat::sexpr: return detail::emit_sexpr(id);
        case EmitFormat::json: return detail::identity_to_json(id).dump(2);
    }
    throw std::invalid_argument("emit: unsupported format");
}

// --- Evaluation into concrete matrices ---------------------------------------

/// Substitutes concrete matrices for the formal symbols. Construct with (A,B)
/// for identities mentioning A; the B-only form rejects A-symbols.
class TraceEvaluator {
public:
    TraceEvaluator(const Matrix& a, const Matrix& b) : b_(b) {
        detail::require_pair(a, b, "TraceEvaluator");
        a_.emplace(a);
        init_powers();
    }

    explicit TraceEvaluator(const Matrix& b) : b_(b) {
        detail::require_odd(b, "TraceEvaluator");
        init_powers();
    }

    Element symbol_value(const TraceSymbol& s) const {
        switch (s.kind) {
            case SymbolKind::even_a: return trace(a_power(s.p1));
            case SymbolKind::even_b2: return trace(b_power(2 * s.p1));
            case SymbolKind::mixed_odd: return trace(a_power(s.p1) * b_ * a_power(s.p2));
            case SymbolKind::odd_b: return trace(b_power(s.p1));
        }
        throw std::logic_error("TraceEvaluator: unreachable");
    }

    Element value(const EvenTracePoly& p) const {
        Element out = Element::zero(cfg());
        for (const auto& [m, c] : p.terms()) {
            Element prod = Element::scalar(cfg(), c);
            for (const auto& [s, e] : m.factors)
                for (int i = 0; i < e; ++i) prod = prod * symbol_value(s);
            out = out + prod;
        }
        return out;
    }

    Element value(const OddTraceLinear& x) const {
        Element out = Element::zero(cfg());
        for (const auto& [s, p] : x.terms()) out = out + value(p) * symbol_value(s);
        return out;
    }

    Element value(const TraceExpr& e) const { return value(e.even) + value(e.odd); }

    Matrix pattern_value(const PowerPattern& p) const {
        switch (p.kind) {
            case PatternKind::unit: return Matrix::identity(b_.size(), cfg());
            case PatternKind::a_power: return a_power(p.k);
            case PatternKind::b_power: return b_power(p.k);
            case PatternKind::mixed_word: {
                Matrix out(b_.size(), cfg());
                for (int j = 0; j <= p.k - 1; ++j) out = out + a_power(p.k - 1 - j) * b_ * a_power(j);
                return out;
            }
        }
        throw std::logic_error("TraceEvaluator: unreachable");
    }

private:
    void init_powers() {
        bpow_ = detail::powers_up_to(b_, 2 * b_.size());
        if (a_) apow_ = detail::powers_up_to(*a_, a_->size());
    }

    const AlgebraConfig& cfg() const { return b_.config(); }

    const Matrix& a_power(int k) const {
        if (!a_) throw std::invalid_argument("TraceEvaluator: identity references A but no A was supplied");
        return apow_.at(static_cast<size_t>(k));
    }

    const Matrix& b_power(int k) const { return bpow_.at(static_cast<size_t>(k)); }

    std::optional<Matrix> a_;
    Matrix b_;
    std::vector<Matrix> apow_, bpow_;
};

inline Matrix substitute(const SymbolicIdentity& id, const TraceEvaluator& ev, int n) {
    if (id.n != n) throw std::invalid_argument("substitute: identity size does not match the matrices");
    std::optional<Matrix> sum;
    for (const auto& term : id.terms) {
        Matrix t = ev.value(term.coeff) * ev.pattern_value(term.pattern);
        sum = sum ? *sum + t : t;
    }
    if (!sum) throw std::invalid_argument("substitute: identity has no terms");
    return *sum;
}

inline Matrix substitute(const SymbolicIdentity& id, const Matrix& a, const Matrix& b) {
    return substitute(id, TraceEvaluator(a, b), b.size());
}

inline Matrix substitute(const SymbolicIdentity& id, const Matrix& b) {
    if (id.kind != IdentityKind::thm23)
        throw std::invalid_argument("substitute: this identity needs both A and B");
    return substitute(id, TraceEvaluator(b), b.size());
}

} // namespace gch

#endif // GCH_TRACE_SYMBOLIC_HPP
