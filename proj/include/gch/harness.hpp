#ifndef GCH_HARNESS_HPP
#define GCH_HARNESS_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gch/graded_identities.hpp"

namespace gch {

// --- deterministic PRNG -------------------------------------------------------
//
// Algorithm: std::mt19937_64 (bit-exact across platforms by the C++ standard),
// one independent stream per trial, seeded with
// stream_seed = splitmix64(splitmix64(seed) ^ trial_index).

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline uint64_t trial_stream_seed(uint64_t seed, uint64_t trial_index) {
    return splitmix64(splitmix64(seed) ^ trial_index);
}

/// Bounded draws use modulo rejection rather than std::uniform_int_distribution,
/// whose output is implementation-defined.
class Rng {
public:
    explicit Rng(uint64_t stream_seed) : eng_(stream_seed) {}

    uint64_t below(uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % bound;
    }

    /// Uniform on the inclusive range [lo, hi].
    int range(int lo, int hi) {
        if (lo > hi) throw std::invalid_argument("Rng::range: empty range");
        return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo) + 1));
    }

private:
    std::mt19937_64 eng_;
};

// --- random inputs -------------------------------------------------------------

/// Nonzero rational with numerator in -9..9 and denominator in 1..4.
inline Rational random_coefficient(Rng& rng) {
    int num = rng.range(1, 18);
    num = num <= 9 ? num : 9 - num; // 1..9, -1..-9
    return Rational(num, rng.range(1, 4));
}

/// Uniform blade of the requested parity with degree <= d over generators
/// 1..gens: degree drawn uniformly from the admissible degrees (even parity
/// admits 0), then a uniform set of distinct generator indices.
inline Blade random_blade(Parity p, int gens, int d, Rng& rng) {
    if (p != Parity::even && p != Parity::odd)
        throw std::invalid_argument("random_blade: parity must be even or odd");
    std::vector<int> degrees;
    for (int k = (p == Parity::even) ? 0 : 1; k <= d && k <= gens; k += 2) degrees.push_back(k);
    if (degrees.empty())
        throw std::invalid_argument("random_blade: no admissible degree for this parity and bound");
    const int degree = degrees[static_cast<size_t>(rng.below(degrees.size()))];
    Blade b;
    while (b.degree() < degree) {
        const int idx = rng.range(1, gens);
        if (!b.contains(idx)) b.insert(idx);
    }
    return b;
}

/// Matrix whose every entry is a sum of `terms` random homogeneous terms of
/// the requested parity; a pure function of the rng state.
inline Matrix random_homogeneous_matrix(int n, Parity p, int gens, int d, int terms, Rng& rng) {
    const AlgebraConfig cfg = algebra_e(gens);
    Matrix m(n, cfg);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Element::Term> ts;
            for (int t = 0; t < terms; ++t) {
                Blade b = random_blade(p, gens, d, rng);
                ts.emplace_back(b, random_coefficient(rng));
            }
            m.at(i, j) = Element::from_terms(cfg, ts);
        }
    return m;
}

// --- constructed odd families for the scalar-power corollary -------------------

/// [[b, c], [d, -b]] with three distinct single generators and random
/// coefficients: trace-zero, tr(B^2) cancels by anticommutation, and B^3 is a
/// (generically nonzero) scalar matrix.
inline Matrix patterned_trace_zero_matrix(int gens, Rng& rng) {
    if (gens < 3) throw std::invalid_argument("patterned_trace_zero_matrix: needs at least 3 generators");
    const AlgebraConfig cfg = algebra_e(gens);
    int i1 = rng.range(1, gens);
    int i2, i3;
    do {
        i2 = rng.range(1, gens);
    } while (i2 == i1);
    do {
        i3 = rng.range(1, gens);
    } while (i3 == i1 || i3 == i2);
    const Element b = random_coefficient(rng) * Element::generator(cfg, i1);
    const Element c = random_coefficient(rng) * Element::generator(cfg, i2);
    const Element d = random_coefficient(rng) * Element::generator(cfg, i3);
    return Matrix::from_rows(cfg, {{b, c}, {d, -b}});
}

/// Strictly upper triangular with random odd entries: nilpotent, all traces
/// of positive powers vanish.
inline Matrix strictly_upper_triangular_odd(int n, int gens, int d, int terms, Rng& rng) {
    const AlgebraConfig cfg = algebra_e(gens);
    Matrix m(n, cfg);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<Element::Term> ts;
            for (int t = 0; t < terms; ++t)
                ts.emplace_back(random_blade(Parity::odd, gens, d, rng), random_coefficient(rng));
            m.at(i, j) = Element::from_terms(cfg, ts);
        }
    return m;
}

// --- trial runner ---------------------------------------------------------------

enum class TheoremId : uint8_t { thm21, thm23, cor22, cor25, cor27 };

inline const char* to_string(TheoremId t) {
    switch (t) {
        case TheoremId::thm21: return "thm21";
        case TheoremId::thm23: return "thm23";
        case TheoremId::cor22: return "cor22";
        case TheoremId::cor25: return "cor25";
        case TheoremId::cor27: return "cor27";
    }
    return "?";
}

inline TheoremId theorem_from_string(const std::string& s) {
    if (s == "thm21") return TheoremId::thm21;
    if (s == "thm23") return TheoremId::thm23;
    if (s == "cor22") return TheoremId::cor22;
    if (s == "cor25") return TheoremId::cor25;
    if (s == "cor27") return TheoremId::cor27;
    throw std::invalid_argument("unknown theorem selector '" + s + "'");
}

/// The library default for the generator count: the odd-matrix identities get
/// 4n(2n-1) generators so that B^{2n-1} can be nonzero; the pair identities
/// default to 16. Clamped to the blade index cap.
inline int default_gens(TheoremId theorem, int n) {
    int g = 16;
    if (theorem == TheoremId::thm23 || theorem == TheoremId::cor25 || theorem == TheoremId::cor27)
        g = 4 * n * (2 * n - 1);
    return std::min(g, Blade::max_index);
}

struct TrialConfig {
    TheoremId theorem = TheoremId::thm21;
    int n = 2;
    int gens = 16;
    std::string gens_source = "default"; ///< "flag", "env", or "default"
    int trials = 10;
    uint64_t seed = 0;
    int degree = 3;
    int terms = 2;
};

inline void validate(const TrialConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("TrialConfig: n must be >= 1");
    if (cfg.gens < 1 || cfg.gens > Blade::max_index)
        throw std::invalid_argument("TrialConfig: gens must be in 1.." + std::to_string(Blade::max_index));
    if (cfg.trials < 1) throw std::invalid_argument("TrialConfig: trials must be >= 1");
    if (cfg.degree < 1) throw std::invalid_argument("TrialConfig: degree must be >= 1");
    if (cfg.terms < 1) throw std::invalid_argument("TrialConfig: terms must be >= 1");
    if (cfg.theorem == TheoremId::cor22 && cfg.n != 2)
        throw std::invalid_argument("TrialConfig: cor22 is defined only for n = 2");
    if (cfg.theorem == TheoremId::cor27 && cfg.n != 2 && cfg.n != 3)
        throw std::invalid_argument("TrialConfig: cor27 is defined only for n = 2 and n = 3");
    if (cfg.theorem == TheoremId::cor25) {
        if (cfg.n < 2) throw std::invalid_argument("TrialConfig: cor25 requires n >= 2");
        if (cfg.n == 2 && cfg.gens < 3)
            throw std::invalid_argument("TrialConfig: cor25 with n = 2 needs gens >= 3");
    }
}

struct TrialWitness {
    int row = 0;
    int col = 0;
    std::string entry;
    nlohmann::ordered_json inputs;
    uint64_t stream_seed = 0;
};

struct TrialResult {
    int index = 0;
    bool zero = false;
    int nonzero_partial_terms = 0;
    std::optional<TrialWitness> witness;
};

struct TrialReport {
    TrialConfig config;
    std::vector<TrialResult> trials;
    bool all_zero = true;
    int vacuous_count = 0;
    int64_t elapsed_ms = 0;
};

namespace detail {

inline TrialWitness make_witness(const Matrix& residual, nlohmann::ordered_json inputs, uint64_t stream_seed) {
    for (int i = 0; i < residual.size(); ++i)
        for (int j = 0; j < residual.size(); ++j)
            if (!residual.at(i, j).is_zero())
                return {i, j, to_string(residual.at(i, j)), std::move(inputs), stream_seed};
    return {0, 0, "0", std::move(inputs), stream_seed};
}

inline int count_nonzero(const std::vector<Matrix>& terms) {
    int c = 0;
    for (const auto& t : terms)
        if (!t.is_zero()) ++c;
    return c;
}

} // namespace detail

/// Runs seeded trials of the selected identity. Each trial draws fresh inputs
/// from its own stream, evaluates the left-hand side termwise, and requires
/// the exact zero matrix; the partial-term count certifies non-vacuity
/// (cancellation rather than truncation nilpotence). The run stops at the
/// first nonzero residual, which always carries a replay witness.
inline TrialReport run_trials(const TrialConfig& cfg) {
    validate(cfg);
    const auto start = std::chrono::steady_clock::now();
    TrialReport report;
    report.config = cfg;

    for (int trial = 0; trial < cfg.trials; ++trial) {
        const uint64_t stream_seed = trial_stream_seed(cfg.seed, static_cast<uint64_t>(trial));
        Rng rng(stream_seed);
        TrialResult result;
        result.index = trial;

        std::vector<Matrix> terms;
        Matrix residual(cfg.n, algebra_e(cfg.gens));
        nlohmann::ordered_json inputs;
        bool ok = true;

        switch (cfg.theorem) {
            case TheoremId::thm21:
            case TheoremId::cor22: {
                const Matrix a = random_homogeneous_matrix(cfg.n, Parity::even, cfg.gens, cfg.degree, cfg.terms, rng);
                const Matrix b = random_homogeneous_matrix(cfg.n, Parity::odd, cfg.gens, cfg.degree, cfg.terms, rng);
                inputs["a"] = matrix_to_json(a);
                inputs["b"] = matrix_to_json(b);
                terms = cfg.theorem == TheoremId::thm21 ? theorem21_lhs_terms(a, b)
                                                        : corollary22_lhs_terms(a, b);
                residual = sum_terms(terms);
                ok = residual.is_zero();
                break;
            }
            case TheoremId::thm23:
            case TheoremId::cor27: {
                const Matrix b = random_homogeneous_matrix(cfg.n, Parity::odd, cfg.gens, cfg.degree, cfg.terms, rng);
                inputs["b"] = matrix_to_json(b);
                terms = cfg.theorem == TheoremId::thm23 ? theorem23_lhs_terms(b) : corollary27_lhs_terms(b);
                residual = sum_terms(terms);
                ok = residual.is_zero();
                break;
            }
            case TheoremId::cor25: {
                const bool patterned = cfg.n == 2 && trial % 2 == 0;
                const Matrix b = patterned
                                     ? patterned_trace_zero_matrix(cfg.gens, rng)
                                     : strictly_upper_triangular_odd(cfg.n, cfg.gens, cfg.degree, cfg.terms, rng);
                inputs["b"] = matrix_to_json(b);
                const Matrix top = pow(b, 2 * cfg.n - 1);
                terms = {Rational(cfg.n) * top, trace(top) * Matrix::identity(cfg.n, b.config())};
                residual = terms[0] - terms[1];
                const Corollary25Verdict v = corollary25_check(b);
                ok = v.hypothesis_satisfied && v.scalar_identity && (!v.top_trace_zero || v.top_power_zero);
                break;
            }
        }

        result.nonzero_partial_terms = detail::count_nonzero(terms);
        if (result.nonzero_partial_terms == 0) ++report.vacuous_count;
        result.zero = ok;
        if (!ok) {
            report.all_zero = false;
            result.witness = detail::make_witness(residual, std::move(inputs), stream_seed);
            report.trials.push_back(std::move(result));
            break;
        }
        report.trials.push_back(std::move(result));
    }

    report.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return report;
}

inline nlohmann::ordered_json report_to_json(const TrialReport& r) {
    nlohmann::ordered_json config;
    config["theorem"] = to_string(r.config.theorem);
    config["n"] = r.config.n;
    config["gens"] = r.config.gens;
    config["gens_source"] = r.config.gens_source;
    config["trials"] = r.config.trials;
    config["seed"] = r.config.seed;
    config["degree"] = r.config.degree;
    config["terms"] = r.config.terms;
    config["prng"] = {{"algorithm", "mt19937_64"},
                      {"stream_seed", "splitmix64(splitmix64(seed) xor trial_index)"}};

    nlohmann::ordered_json trials = nlohmann::ordered_json::array();
    for (const auto& t : r.trials) {
        nlohmann::ordered_json jt;
        jt["index"] = t.index;
        jt["verdict"] = t.zero ? "zero" : "nonzero";
        jt["nonzero_partial_terms"] = t.nonzero_partial_terms;
        if (t.witness) {
            jt["witness"] = {{"row", t.witness->row},
                             {"col", t.witness->col},
                             {"entry", t.witness->entry},
                             {"inputs", t.witness->inputs},
                             {"stream_seed", t.witness->stream_seed}};
        }
        trials.push_back(std::move(jt));
    }

    return nlohmann::ordered_json{
        {"schema_version", 1},
        {"config", std::move(config)},
        {"trials", std::move(trials)},
        {"summary",
         {{"all_zero", r.all_zero}, {"vacuous_count", r.vacuous_count}, {"elapsed_ms", r.elapsed_ms}}}};
}

} // namespace gch

#endif // GCH_HARNESS_HPP
