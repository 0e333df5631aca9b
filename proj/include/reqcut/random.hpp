#pragma once

#include <cstdint>

namespace reqcut {

// Counter-based randomness: every draw is a pure function of its key, so
// results do not depend on evaluation order or thread scheduling.

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return splitmix64(splitmix64(seed ^ splitmix64(a)) ^ splitmix64(b + 0x632BE59BD9B4E019ull));
}

/// Seed of the index-th independent child stream of `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix_key(master, 0xD1B54A32D192ED03ull, index);
}

/// Uniform double on the open interval (0, 1).
constexpr double uniform_open01(std::uint64_t key) {
    // 52 random bits offset by half a step keeps both endpoints out exactly.
    return (static_cast<double>(splitmix64(key) >> 12) + 0.5) * 0x1.0p-52;
}

/// Uniform integer in [0, bound) by rejection; bound must be positive.
inline std::uint64_t uniform_index(std::uint64_t key, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (std::uint64_t counter = 0;; ++counter) {
        std::uint64_t r = splitmix64(mix_key(key, counter));
        if (r < limit) return r % bound;
    }
}

/// Small sequential generator for instance generators.
class SeqRng {
public:
    explicit SeqRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next() { return splitmix64(mix_key(seed_, counter_++)); }
    std::uint64_t below(std::uint64_t bound) { return uniform_index(mix_key(seed_, counter_++, 1), bound); }
    /// Uniform integer in [lo, hi].
    long long between(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    double unit() { return uniform_open01(mix_key(seed_, counter_++, 2)); }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace reqcut
