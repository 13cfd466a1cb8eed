#pragma once

#include <cstdint>

namespace hfree {

__extension__ using uint128 = unsigned __int128;

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Fixed constants; part of
/// the reproducibility contract, so never change them.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Counter-based SplitMix64 stream: the i-th output is mix64(seed + (i+1)*gamma).
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

    /// Uniform integer in [0, bound) by Lemire's multiply-shift with
    /// rejection. bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        uint128 m = static_cast<uint128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<uint128>(next()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::uint64_t state_;
};

/// Seed of trial t in a sweep: mix64(base ^ mix64(t + gamma)).
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t trial) {
    return mix64(base_seed ^ mix64(trial + kGoldenGamma));
}

}  // namespace hfree
