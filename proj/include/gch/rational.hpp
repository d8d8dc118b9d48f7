#ifndef GCH_RATIONAL_HPP
#define GCH_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace gch {

/// Exact arbitrary-precision rational scalar.
using Rational = boost::multiprecision::cpp_rational;

/// Renders as `p` or `p/q` with q > 0 and gcd(p, q) = 1.
inline std::string rational_to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += '/';
        s += denominator(q).str();
    }
    return s;
}

/// Parses `p` or `p/q`. Throws std::invalid_argument on malformed input
/// or a zero denominator.
inline Rational parse_rational(const std::string& text) {
    if (text.empty())
        throw std::invalid_argument("parse_rational: empty string");
    for (char c : text) {
        if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
            throw std::invalid_argument("parse_rational: bad character in '" + text + "'");
    }
    try {
        return Rational(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rational: cannot parse '" + text + "'");
    }
}

} // namespace gch

#endif // GCH_RATIONAL_HPP
