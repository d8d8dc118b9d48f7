#ifndef GCH_GRASSMANN_HPP
#define GCH_GRASSMANN_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gch/blade.hpp"
#include "gch/rational.hpp"

namespace gch {

/// E is the Grassmann algebra on v1..vG; F additionally admits the reserved
/// generator w at index 0.
enum class Context : uint8_t { E, F };

struct AlgebraConfig {
    int gens = 16;
    Context context = Context::E;

    bool admits(const Blade& b) const {
        if (b.contains(0) && context != Context::F) return false;
        return b.highest_index() <= gens;
    }

    friend bool operator==(const AlgebraConfig&, const AlgebraConfig&) = default;
};

inline AlgebraConfig algebra_e(int gens) {
    if (gens < 1 || gens > Blade::max_index)
        throw std::invalid_argument("AlgebraConfig: generator count must be in 1.." +
                                    std::to_string(Blade::max_index));
    return {gens, Context::E};
}

inline AlgebraConfig algebra_f(int gens) {
    AlgebraConfig cfg = algebra_e(gens);
    cfg.context = Context::F;
    return cfg;
}

enum class Parity : uint8_t { even, odd, mixed, zero };

inline bool is_even_or_zero(Parity p) { return p == Parity::even || p == Parity::zero; }
inline bool is_odd_or_zero(Parity p) { return p == Parity::odd || p == Parity::zero; }

inline const char* to_string(Parity p) {
    switch (p) {
        case Parity::even: return "even";
        case Parity::odd: return "odd";
        case Parity::mixed: return "mixed";
        case Parity::zero: return "zero";
    }
    return "?";
}

/// An exact rational linear combination of blades. Terms are kept in the
/// canonical (degree, lex) blade order with no zero coefficients; the empty
/// term list is the zero element. Values are immutable after construction.
class Element {
public:
    using Term = std::pair<Blade, Rational>;

    explicit Element(const AlgebraConfig& cfg) : cfg_(cfg) {}

    static Element zero(const AlgebraConfig& cfg) { return Element(cfg); }

    static Element scalar(const AlgebraConfig& cfg, const Rational& value) {
        Element e(cfg);
        if (value != 0) e.terms_.emplace_back(Blade{}, value);
        return e;
    }

    /// The generator with the given index: v_index, or w for index 0.
    static Element generator(const AlgebraConfig& cfg, int index) {
        Blade b;
        b.insert(index);
        if (!cfg.admits(b))
            throw std::invalid_argument("Element::generator: index " + std::to_string(index) +
                                        " not admitted by the configuration");
        Element e(cfg);
        e.terms_.emplace_back(b, 1);
        return e;
    }

    /// Builds an element from arbitrary (blade, coeff) pairs: validates each
    /// blade, merges duplicates, prunes zeros, sorts canonically.
    static Element from_terms(const AlgebraConfig& cfg, const std::vector<Term>& terms) {
        std::map<Blade, Rational, BladeLess> acc;
        for (const auto& [b, c] : terms) {
            if (!cfg.admits(b))
                throw std::invalid_argument("Element::from_terms: blade not admitted by the configuration");
            auto [it, inserted] = acc.try_emplace(b, c);
            if (!inserted) it->second += c;
        }
        Element e(cfg);
        for (auto& [b, c] : acc)
            if (c != 0) e.terms_.emplace_back(b, c);
        return e;
    }

    const AlgebraConfig& config() const { return cfg_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(const Blade& b) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), b,
                                   [](const Term& t, const Blade& key) { return blade_less(t.first, key); });
        if (it != terms_.end() && it->first == b) return it->second;
        return 0;
    }

    Element operator-() const {
        Element e(cfg_);
        e.terms_.reserve(terms_.size());
        for (const auto& [b, c] : terms_) e.terms_.emplace_back(b, -c);
        return e;
    }

    friend Element operator+(const Element& x, const Element& y) {
        require_same_config(x, y, "add");
        Element out(x.cfg_);
        auto i = x.terms_.begin();
        auto j = y.terms_.begin();
        while (i != x.terms_.end() && j != y.terms_.end()) {
            if (blade_less(i->first, j->first)) {
                out.terms_.push_back(*i++);
            } else if (blade_less(j->first, i->first)) {
                out.terms_.push_back(*j++);
            } else {
                Rational c = i->second + j->second;
                if (c != 0) out.terms_.emplace_back(i->first, std::move(c));
                ++i;
                ++j;
            }
        }
        out.terms_.insert(out.terms_.end(), i, x.terms_.end());
        out.terms_.insert(out.terms_.end(), j, y.terms_.end());
        return out;
    }

    friend Element operator-(const Element& x, const Element& y) { return x + (-y); }

    /// Bilinear extension of the blade product.
    friend Element operator*(const Element& x, const Element& y) {
        require_same_config(x, y, "mul");
        std::map<Blade, Rational, BladeLess> acc;
        for (const auto& [ba, ca] : x.terms_) {
            for (const auto& [bb, cb] : y.terms_) {
                const SignedBlade p = blade_mul(ba, bb);
                if (p.sign == 0) continue;
                Rational v = ca * cb;
                if (p.sign < 0) v = -v;
                auto [it, inserted] = acc.try_emplace(p.blade, v);
                if (!inserted) {
                    it->second += v;
                    if (it->second == 0) acc.erase(it);
                }
            }
        }
        Element out(x.cfg_);
        out.terms_.assign(acc.begin(), acc.end());
        return out;
    }

    friend Element operator*(const Rational& q, const Element& x) {
        Element out(x.cfg_);
        if (q == 0) return out;
        out.terms_.reserve(x.terms_.size());
        for (const auto& [b, c] : x.terms_) out.terms_.emplace_back(b, q * c);
        return out;
    }

    friend Element operator*(const Element& x, const Rational& q) { return q * x; }

    friend Element operator/(const Element& x, const Rational& q) {
        if (q == 0) throw std::invalid_argument("Element: division by zero");
        return (Rational(1) / q) * x;
    }

    friend bool operator==(const Element&, const Element&) = default;

private:
    static void require_same_config(const Element& x, const Element& y, const char* op) {
        if (!(x.cfg_ == y.cfg_))
            throw std::invalid_argument(std::string("Element ") + op + ": configuration mismatch");
    }

    AlgebraConfig cfg_;
    std::vector<Term> terms_;
};

/// Zero is reported as its own class; callers that require "even" accept
/// {even, zero}.
inline Parity parity(const Element& x) {
    if (x.is_zero()) return Parity::zero;
    bool even = false, odd = false;
    for (const auto& [b, c] : x.terms())
        ((b.degree() & 1) ? odd : even) = true;
    if (even && odd) return Parity::mixed;
    return odd ? Parity::odd : Parity::even;
}

struct WDecomposition {
    Element alpha; ///< the terms without w
    Element beta;  ///< the terms with w, with w factored from the left
};

/// The unique split lambda = alpha + w*beta. w carries the lowest index, so
/// factoring it from the left changes no coefficients; alpha and beta live in
/// E (never contain index 0).
inline WDecomposition decompose_w(const Element& x) {
    const AlgebraConfig ecfg{x.config().gens, Context::E};
    std::vector<Element::Term> a, b;
    for (const auto& [blade, c] : x.terms()) {
        if (blade.contains(0))
            b.emplace_back(blade.without(0), c);
        else
            a.emplace_back(blade, c);
    }
    return {Element::from_terms(ecfg, a), Element::from_terms(ecfg, b)};
}

/// The natural inclusion of E into the extension F with the same generators.
inline Element embed_in_f(const Element& x) {
    if (x.config().context != Context::E)
        throw std::invalid_argument("embed_in_f: element is not in an E-context algebra");
    const AlgebraConfig fcfg{x.config().gens, Context::F};
    return Element::from_terms(fcfg, x.terms());
}

inline Element lift_scalar(const AlgebraConfig& cfg, const Rational& q) {
    return Element::scalar(cfg, q);
}

// --- text serialization ----------------------------------------------------
//
// element  := "0" | term (("+" | "-") term)*
// term     := rational | rational "*" blade | blade
// blade    := atom ("^" atom)*
// atom     := "w" | "v" integer
// rational := ["-"] digits ["/" digits]

inline std::string to_string(const Blade& b) {
    std::string out;
    bool first = true;
    b.for_each_index([&](int i) {
        if (!first) out += '^';
        first = false;
        if (i == 0)
            out += 'w';
        else
            out += 'v' + std::to_string(i);
    });
    return out;
}

inline std::string to_string(const Element& x) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [b, c] : x.terms()) {
        Rational mag = c;
        if (first) {
            first = false;
        } else if (c < 0) {
            out += " - ";
            mag = -c;
        } else {
            out += " + ";
        }
        out += rational_to_string(mag);
        if (!b.empty()) {
            out += " * ";
            out += to_string(b);
        }
    }
    return out;
}

namespace detail {

class ElementTextParser {
public:
    ElementTextParser(const AlgebraConfig& cfg, const std::string& text)
        : cfg_(cfg), s_(text) {}

    Element parse() {
        std::vector<Element::Term> terms;
        skip_ws();
        if (at_end()) throw error("empty input");
        bool negative = consume_sign(true);
        parse_term(terms, negative);
        skip_ws();
        while (!at_end()) {
            negative = consume_sign(false);
            parse_term(terms, negative);
            skip_ws();
        }
        return Element::from_terms(cfg_, terms);
    }

private:
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    std::invalid_argument error(const std::string& what) const {
        return std::invalid_argument("parse_element: " + what + " at offset " + std::to_string(pos_));
    }

    bool consume_sign(bool optional) {
        skip_ws();
        if (!at_end() && (peek() == '+' || peek() == '-')) {
            bool neg = peek() == '-';
            ++pos_;
            return neg;
        }
        if (!optional) throw error("expected '+' or '-'");
        return false;
    }

    void parse_term(std::vector<Element::Term>& terms, bool negative) {
        skip_ws();
        if (at_end()) throw error("expected a term");
        Rational coeff = 1;
        Blade blade;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = parse_number();
            skip_ws();
            if (!at_end() && peek() == '*') {
                ++pos_;
                blade = parse_blade();
            }
        } else {
            blade = parse_blade();
        }
        if (negative) coeff = -coeff;
        if (!cfg_.admits(blade)) throw error("blade not admitted by the configuration");
        terms.emplace_back(blade, coeff);
    }

    Rational parse_number() {
        const size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == start) throw error("expected digits");
        std::string num = s_.substr(start, pos_ - start);
        if (!at_end() && peek() == '/') {
            ++pos_;
            const size_t dstart = pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            if (pos_ == dstart) throw error("expected denominator digits");
            num += '/' + s_.substr(dstart, pos_ - dstart);
        }
        return parse_rational(num);
    }

    Blade parse_blade() {
        Blade b;
        while (true) {
            skip_ws();
            if (at_end()) throw error("expected a generator");
            if (peek() == 'w') {
                ++pos_;
                b.insert(0);
            } else if (peek() == 'v') {
                ++pos_;
                const size_t start = pos_;
                while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
                if (pos_ == start) throw error("expected generator index");
                b.insert(std::stoi(s_.substr(start, pos_ - start)));
            } else {
                throw error("expected 'w' or 'v<k>'");
            }
            skip_ws();
            if (!at_end() && peek() == '^') {
                ++pos_;
                continue;
            }
            break;
        }
        return b;
    }

    AlgebraConfig cfg_;
    const std::string& s_;
    size_t pos_ = 0;
};

} // namespace detail

// --- JSON serialization ----------------------------------------------------
//
// {"terms":[{"blade":[1,3],"coeff":"-3/2"}, ...]}

inline nlohmann::ordered_json element_to_json(const Element& x) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [b, c] : x.terms()) {
        nlohmann::ordered_json t;
        t["blade"] = b.indices();
        t["coeff"] = rational_to_string(c);
        terms.push_back(std::move(t));
    }
    return nlohmann::ordered_json{{"terms", std::move(terms)}};
}

inline Element element_from_json(const AlgebraConfig& cfg, const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw std::invalid_argument("element_from_json: expected {\"terms\": [...]}");
    std::vector<Element::Term> terms;
    for (const auto& t : j["terms"]) {
        if (!t.contains("blade") || !t.contains("coeff"))
            throw std::invalid_argument("element_from_json: term needs \"blade\" and \"coeff\"");
        Blade b = Blade::from_indices(t["blade"].get<std::vector<int>>());
        if (!cfg.admits(b))
            throw std::invalid_argument("element_from_json: blade not admitted by the configuration");
        terms.emplace_back(b, parse_rational(t["coeff"].get<std::string>()));
    }
    return Element::from_terms(cfg, terms);
}

/// Accepts both serialized forms: JSON (leading '{') and the text grammar.
inline Element parse_element(const AlgebraConfig& cfg, const std::string& text) {
    size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && text[i] == '{')
        return element_from_json(cfg, nlohmann::json::parse(text));
    return detail::ElementTextParser(cfg, text).parse();
}

} // namespace gch

#endif // GCH_GRASSMANN_HPP
