#pragma once

// Seeded randomness with platform-independent output.
//
// std::mt19937_64 has a fully specified output sequence, but the standard
// distributions do not, so bounded draws are done here by rejection sampling
// on the raw 64-bit stream. Per-item seeds are derived with SplitMix64 so that
// parallel scans draw the same values as sequential ones.

#include <cstdint>
#include <random>
#include <vector>

namespace vcsum {

/// One SplitMix64 step applied to `x` (a pure mixing function).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for the `index`-th item of a stream rooted at `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform value in [0, bound). `bound` must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        // Reject the top partial bucket so every residue is equally likely.
        const std::uint64_t limit = std::uint64_t(0) - (std::uint64_t(0) - bound) % bound;
        for (;;) {
            const std::uint64_t r = engine_();
            if (limit == 0 || r < limit) return r % bound;
        }
    }

    /// Uniform value in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
        if (hi - lo == ~std::uint64_t(0)) return engine_();
        return lo + below(hi - lo + 1);
    }

private:
    std::mt19937_64 engine_;
};

/// `count` distinct values from [0, universe), chosen uniformly by Floyd's
/// sampling algorithm; returned in ascending order.
std::vector<std::uint64_t> sample_distinct(Rng& rng, std::uint64_t universe, std::uint64_t count);

}  // namespace vcsum
