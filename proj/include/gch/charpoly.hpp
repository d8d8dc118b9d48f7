#ifndef GCH_CHARPOLY_HPP
#define GCH_CHARPOLY_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "gch/matrix.hpp"

namespace gch {

/// Coefficients lambda_0..lambda_n of the characteristic polynomial
/// p(x) = lambda_0 + lambda_1 x + ... + lambda_n x^n, with lambda_n = 1.
struct CharPoly {
    int n = 0;
    std::vector<Element> coeffs;

    const Element& operator[](int k) const { return coeffs.at(static_cast<size_t>(k)); }
};

namespace detail {

inline void require_even(const Matrix& h, const char* who) {
    if (!is_even_or_zero(parity_of(h)))
        throw std::invalid_argument(std::string(who) + ": matrix entries must be even (commuting)");
}

} // namespace detail

/// Descending recursion: lambda_n = 1 and, for k = n-1 down to 0,
///   lambda_k = -(1/(n-k)) * sum_{i=1..n-k} lambda_{k+i} tr(H^i).
/// Valid for matrices over the commutative even part.
inline CharPoly faddeev_leverrier(const Matrix& h) {
    detail::require_even(h, "faddeev_leverrier");
    const int n = h.size();
    const AlgebraConfig cfg = h.config();

    std::vector<Element> power_trace(static_cast<size_t>(n) + 1, Element::zero(cfg));
    Matrix hp = Matrix::identity(n, cfg);
    for (int i = 1; i <= n; ++i) {
        hp = hp * h;
        power_trace[static_cast<size_t>(i)] = trace(hp);
    }

    CharPoly p{n, std::vector<Element>(static_cast<size_t>(n) + 1, Element::zero(cfg))};
    p.coeffs[static_cast<size_t>(n)] = Element::scalar(cfg, 1);
    for (int k = n - 1; k >= 0; --k) {
        Element acc = Element::zero(cfg);
        for (int i = 1; i <= n - k; ++i)
            acc = acc + p.coeffs[static_cast<size_t>(k + i)] * power_trace[static_cast<size_t>(i)];
        p.coeffs[static_cast<size_t>(k)] = acc / Rational(-(n - k));
    }
    return p;
}

namespace detail {

/// Dense polynomial over the algebra, coefficient of x^i at index i.
using ElemPoly = std::vector<Element>;

inline ElemPoly poly_add(const ElemPoly& a, const ElemPoly& b, const AlgebraConfig& cfg) {
    ElemPoly out(std::max(a.size(), b.size()), Element::zero(cfg));
    for (size_t i = 0; i < a.size(); ++i) out[i] = out[i] + a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] = out[i] + b[i];
    return out;
}

inline ElemPoly poly_mul(const ElemPoly& a, const ElemPoly& b, const AlgebraConfig& cfg) {
    if (a.empty() || b.empty()) return {};
    ElemPoly out(a.size() + b.size() - 1, Element::zero(cfg));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
    return out;
}

inline ElemPoly poly_det(const std::vector<std::vector<ElemPoly>>& m, const AlgebraConfig& cfg) {
    const size_t n = m.size();
    if (n == 1) return m[0][0];
    ElemPoly det;
    for (size_t j = 0; j < n; ++j) {
        std::vector<std::vector<ElemPoly>> minor(n - 1);
        for (size_t r = 1; r < n; ++r)
            for (size_t c = 0; c < n; ++c)
                if (c != j) minor[r - 1].push_back(m[r][c]);
        ElemPoly cof = poly_mul(m[0][j], poly_det(minor, cfg), cfg);
        if (j % 2 == 1)
            for (auto& e : cof) e = -e;
        det = poly_add(det, cof, cfg);
    }
    return det;
}

} // namespace detail

/// Independent route for tests: expands det(xI - H) by cofactors over the
/// commutative even part. Kept at oracle scale (n <= 5).
inline CharPoly charpoly_oracle(const Matrix& h) {
    detail::require_even(h, "charpoly_oracle");
    const int n = h.size();
    if (n > 5) throw std::invalid_argument("charpoly_oracle: supported only for n <= 5");
    const AlgebraConfig cfg = h.config();

    std::vector<std::vector<detail::ElemPoly>> xi_minus_h(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            detail::ElemPoly p{-h.at(i, j)};
            if (i == j) p.push_back(Element::scalar(cfg, 1));
            xi_minus_h[static_cast<size_t>(i)].push_back(std::move(p));
        }

    detail::ElemPoly det = detail::poly_det(xi_minus_h, cfg);
    det.resize(static_cast<size_t>(n) + 1, Element::zero(cfg));
    return CharPoly{n, std::move(det)};
}

/// p(M) = sum_k lambda_k M^k, with lambda_0 contributing lambda_0 * I.
inline Matrix eval_poly(const CharPoly& p, const Matrix& m) {
    if (m.size() < 1) throw std::invalid_argument("eval_poly: matrix must be nonempty");
    Matrix acc(m.size(), m.config());
    Matrix mp = Matrix::identity(m.size(), m.config());
    for (size_t k = 0; k < p.coeffs.size(); ++k) {
        if (k > 0) mp = mp * m;
        if (!p.coeffs[k].is_zero()) acc = acc + p.coeffs[k] * mp;
    }
    return acc;
}

} // namespace gch

#endif // GCH_CHARPOLY_HPP
