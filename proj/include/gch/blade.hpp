#ifndef GCH_BLADE_HPP
#define GCH_BLADE_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace gch {

/// A square-free monomial in the anticommuting generators, stored as an
/// index bitmask. Index 0 is the reserved extra generator w; indices
/// 1..max_index are v1, v2, ... The index set is the identity of the blade;
/// the empty blade is the unit monomial 1.
class Blade {
public:
    /// Highest representable generator index (two 64-bit words).
    static constexpr int max_index = 127;

    constexpr Blade() : bits_{0, 0} {}

    static Blade from_indices(std::initializer_list<int> indices) {
        Blade b;
        for (int i : indices) b.insert(i);
        return b;
    }

    static Blade from_indices(const std::vector<int>& indices) {
        Blade b;
        for (int i : indices) b.insert(i);
        return b;
    }

    /// Adds one index; rejects out-of-range and duplicate indices.
    void insert(int index) {
        if (index < 0 || index > max_index)
            throw std::invalid_argument("Blade: index " + std::to_string(index) +
                                        " out of range 0.." + std::to_string(max_index));
        const uint64_t bit = uint64_t{1} << (index & 63);
        if (bits_[index >> 6] & bit)
            throw std::invalid_argument("Blade: duplicate index " + std::to_string(index));
        bits_[index >> 6] |= bit;
    }

    bool contains(int index) const {
        if (index < 0 || index > max_index) return false;
        return (bits_[index >> 6] >> (index & 63)) & 1;
    }

    int degree() const { return std::popcount(bits_[0]) + std::popcount(bits_[1]); }
    bool empty() const { return bits_[0] == 0 && bits_[1] == 0; }

    bool intersects(const Blade& o) const {
        return (bits_[0] & o.bits_[0]) || (bits_[1] & o.bits_[1]);
    }

    /// Disjoint union of the index sets; callers check intersects() first.
    Blade unite(const Blade& o) const {
        Blade b;
        b.bits_[0] = bits_[0] | o.bits_[0];
        b.bits_[1] = bits_[1] | o.bits_[1];
        return b;
    }

    /// The blade with `index` removed (no-op if absent).
    Blade without(int index) const {
        Blade b = *this;
        if (index >= 0 && index <= max_index)
            b.bits_[index >> 6] &= ~(uint64_t{1} << (index & 63));
        return b;
    }

    /// Largest index present; -1 for the empty blade.
    int highest_index() const {
        if (bits_[1]) return 64 + 63 - std::countl_zero(bits_[1]);
        if (bits_[0]) return 63 - std::countl_zero(bits_[0]);
        return -1;
    }

    /// Number of indices strictly greater than `index`.
    int count_above(int index) const {
        if (index < 0) return degree();
        if (index >= max_index) return 0;
        if (index < 64) {
            const uint64_t mask = (index == 63) ? 0 : (~uint64_t{0} << (index + 1));
            return std::popcount(bits_[0] & mask) + std::popcount(bits_[1]);
        }
        const int k = index - 64;
        const uint64_t mask = (k == 63) ? 0 : (~uint64_t{0} << (k + 1));
        return std::popcount(bits_[1] & mask);
    }

    /// Ascending index list.
    std::vector<int> indices() const {
        std::vector<int> out;
        out.reserve(degree());
        for_each_index([&](int i) { out.push_back(i); });
        return out;
    }

    template <class F>
    void for_each_index(F f) const {
        for (int word = 0; word < 2; ++word) {
            uint64_t x = bits_[word];
            while (x) {
                f(word * 64 + std::countr_zero(x));
                x &= x - 1;
            }
        }
    }

    uint64_t word(int i) const { return bits_[i]; }

    friend bool operator==(const Blade&, const Blade&) = default;

private:
    std::array<uint64_t, 2> bits_;
};

/// Canonical blade order: by degree, then lexicographically on the ascending
/// index sequence. For equal degree the blade containing the lowest index at
/// which the two sets differ comes first.
inline bool blade_less(const Blade& a, const Blade& b) {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    const uint64_t x0 = a.word(0) ^ b.word(0);
    const uint64_t x1 = a.word(1) ^ b.word(1);
    if (x0 == 0 && x1 == 0) return false;
    const int j = x0 ? std::countr_zero(x0) : 64 + std::countr_zero(x1);
    return a.contains(j);
}

struct BladeLess {
    bool operator()(const Blade& a, const Blade& b) const { return blade_less(a, b); }
};

/// Product of two basis blades: sign 0 when the index sets intersect
/// (a generator squares to zero), otherwise +-1 with the union blade.
struct SignedBlade {
    int sign = 0;
    Blade blade;
};

/// sign = (-1)^m where m counts the pairs (i, j), i in a, j in b, i > j:
/// the transpositions needed to interleave b into a in ascending order.
inline SignedBlade blade_mul(const Blade& a, const Blade& b) {
    if (a.intersects(b)) return {};
    int inversions = 0;
    b.for_each_index([&](int j) { inversions += a.count_above(j); });
    return {(inversions & 1) ? -1 : 1, a.unite(b)};
}

} // namespace gch

#endif // GCH_BLADE_HPP
