#ifndef GCH_MATRIX_HPP
#define GCH_MATRIX_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gch/grassmann.hpp"

namespace gch {

/// Square matrix over the Grassmann algebra. Entries share one configuration.
/// Homogeneity is not enforced at construction; operations that need an even
/// or odd matrix check parity_of and fail fast.
class Matrix {
public:
    Matrix(int n, const AlgebraConfig& cfg)
        : n_(n), cfg_(cfg), entries_(static_cast<size_t>(check_size(n)) * n, Element::zero(cfg)) {}

    static Matrix identity(int n, const AlgebraConfig& cfg) {
        Matrix m(n, cfg);
        for (int i = 0; i < n; ++i) m.at(i, i) = Element::scalar(cfg, 1);
        return m;
    }

    static Matrix from_rows(const AlgebraConfig& cfg, const std::vector<std::vector<Element>>& rows) {
        const int n = static_cast<int>(rows.size());
        Matrix m(n, cfg);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[i].size()) != n)
                throw std::invalid_argument("Matrix: rows must form a square array");
            for (int j = 0; j < n; ++j) {
                if (!(rows[i][j].config() == cfg))
                    throw std::invalid_argument("Matrix: entry configuration mismatch");
                m.at(i, j) = rows[i][j];
            }
        }
        return m;
    }

    int size() const { return n_; }
    const AlgebraConfig& config() const { return cfg_; }

    const Element& at(int i, int j) const { return entries_[index(i, j)]; }
    Element& at(int i, int j) { return entries_[index(i, j)]; }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        require_compatible(x, y, "add");
        Matrix out(x.n_, x.cfg_);
        for (size_t k = 0; k < x.entries_.size(); ++k) out.entries_[k] = x.entries_[k] + y.entries_[k];
        return out;
    }

    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        require_compatible(x, y, "sub");
        Matrix out(x.n_, x.cfg_);
        for (size_t k = 0; k < x.entries_.size(); ++k) out.entries_[k] = x.entries_[k] - y.entries_[k];
        return out;
    }

    Matrix operator-() const {
        Matrix out(n_, cfg_);
        for (size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = -entries_[k];
        return out;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        require_compatible(x, y, "mul");
        Matrix out(x.n_, x.cfg_);
        for (int i = 0; i < x.n_; ++i)
            for (int j = 0; j < x.n_; ++j) {
                Element acc = Element::zero(x.cfg_);
                for (int k = 0; k < x.n_; ++k) acc = acc + x.at(i, k) * y.at(k, j);
                out.at(i, j) = acc;
            }
        return out;
    }

    /// Left scalar multiplication by an algebra element.
    friend Matrix operator*(const Element& s, const Matrix& m) {
        if (!(s.config() == m.cfg_))
            throw std::invalid_argument("Matrix scalar mul: configuration mismatch");
        Matrix out(m.n_, m.cfg_);
        for (size_t k = 0; k < m.entries_.size(); ++k) out.entries_[k] = s * m.entries_[k];
        return out;
    }

    friend Matrix operator*(const Rational& q, const Matrix& m) {
        Matrix out(m.n_, m.cfg_);
        for (size_t k = 0; k < m.entries_.size(); ++k) out.entries_[k] = q * m.entries_[k];
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

private:
    static int check_size(int n) {
        if (n < 1) throw std::invalid_argument("Matrix: size must be positive");
        return n;
    }

    static void require_compatible(const Matrix& x, const Matrix& y, const char* op) {
        if (x.n_ != y.n_ || !(x.cfg_ == y.cfg_))
            throw std::invalid_argument(std::string("Matrix ") + op + ": size or configuration mismatch");
    }

    size_t index(int i, int j) const {
        if (i < 0 || i >= n_ || j < 0 || j >= n_)
            throw std::out_of_range("Matrix: index out of range");
        return static_cast<size_t>(i) * n_ + j;
    }

    int n_;
    AlgebraConfig cfg_;
    std::vector<Element> entries_;
};

inline Element trace(const Matrix& m) {
    Element t = Element::zero(m.config());
    for (int i = 0; i < m.size(); ++i) t = t + m.at(i, i);
    return t;
}

/// Exponents at this scale stay below 2n, so iterated multiplication is used
/// rather than repeated squaring; it also keeps intermediate sparsity
/// predictable for the non-vacuity counters.
inline Matrix pow(const Matrix& m, int k) {
    if (k < 0) throw std::invalid_argument("Matrix pow: exponent must be nonnegative");
    Matrix out = Matrix::identity(m.size(), m.config());
    for (int i = 0; i < k; ++i) out = out * m;
    return out;
}

/// even iff every entry is even-or-zero; odd iff every entry is odd-or-zero;
/// zero iff all entries vanish.
inline Parity parity_of(const Matrix& m) {
    bool all_even = true, all_odd = true, all_zero = true;
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) {
            const Parity p = parity(m.at(i, j));
            if (p != Parity::zero) all_zero = false;
            if (!is_even_or_zero(p)) all_even = false;
            if (!is_odd_or_zero(p)) all_odd = false;
        }
    if (all_zero) return Parity::zero;
    if (all_even) return Parity::even;
    if (all_odd) return Parity::odd;
    return Parity::mixed;
}

inline nlohmann::ordered_json matrix_to_json(const Matrix& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < m.size(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int j = 0; j < m.size(); ++j) row.push_back(element_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return nlohmann::ordered_json{{"n", m.size()}, {"entries", std::move(rows)}};
}

inline Matrix matrix_from_json(const AlgebraConfig& cfg, const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw std::invalid_argument("matrix_from_json: expected {\"n\": ..., \"entries\": [...]}");
    const int n = j["n"].get<int>();
    const auto& rows = j["entries"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw std::invalid_argument("matrix_from_json: entries must be an n-row array");
    Matrix m(n, cfg);
    for (int i = 0; i < n; ++i) {
        if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
            throw std::invalid_argument("matrix_from_json: each row must have n entries");
        for (int jj = 0; jj < n; ++jj) m.at(i, jj) = element_from_json(cfg, rows[i][jj]);
    }
    return m;
}

} // namespace gch

#endif // GCH_MATRIX_HPP
