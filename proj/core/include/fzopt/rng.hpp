#ifndef FZOPT_RNG_HPP
#define FZOPT_RNG_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace fzopt {

/// Seeded 64-bit generator used everywhere in this project. Wraps
/// std::mt19937_64, whose output sequence is fixed by the standard, and
/// derives uniform doubles from the top 53 bits so that results are
/// bit-identical across platforms (std::uniform_real_distribution is not
/// portable). There is no global RNG state; every caller passes a seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    /// Uniform integer in [0, n). Masked rejection, exact and portable.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t mask = ~std::uint64_t{0} >> __builtin_clzll(n - 1 | 1);
        for (;;) {
            std::uint64_t v = engine_() & mask;
            if (v < n) return v;
        }
    }

    /// Fisher-Yates shuffle driven by below(), deterministic per seed.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// Derives an independent stream seed from (seed, stream). SplitMix64
/// finalizer; used for per-fold, per-member and per-individual seeds so
/// parallel schedules cannot change results.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace fzopt

#endif
