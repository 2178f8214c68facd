#pragma once

#include <cstdint>

namespace multipack {

/// SplitMix64 stream. Output is fully specified by the seed, so every
/// generator built on it is reproducible across platforms and standard
/// libraries (unlike the <random> distributions).
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound), bound > 0. Rejection sampling, no modulo bias.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % bound;
    }

    /// Independent child stream; the parent advances by one draw.
    constexpr SplitMix64 split() noexcept { return SplitMix64(next() ^ 0xD1B54A32D192ED03ULL); }

    /// Child stream keyed by `index` without advancing the parent.
    constexpr SplitMix64 fork(std::uint64_t index) const noexcept {
        SplitMix64 tmp(state_ ^ (index * 0xA24BAED4963EE407ULL + 0x9FB21C651E98DF25ULL));
        return SplitMix64(tmp.next());
    }

private:
    std::uint64_t state_;
};

} // namespace multipack
