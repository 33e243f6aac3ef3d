/**
 * @file random.hpp
 * @brief Seed derivation helpers.
 */
#ifndef PPBNB_RANDOM_HPP
#define PPBNB_RANDOM_HPP

#include <cstdint>
#include <random>

namespace ppbnb {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; mixes a 64-bit value into a well-distributed one.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Stream seed for one box, independent of scheduling order.
constexpr std::uint64_t derive_seed(std::uint64_t global_seed, std::uint64_t stream) noexcept {
    return mix_seed(mix_seed(global_seed) ^ (stream * 0xD1B54A32D192ED03ULL));
}

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace ppbnb

#endif  // PPBNB_RANDOM_HPP
