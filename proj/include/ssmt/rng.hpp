// Seeded random streams. Every replicate gets its own engine seeded from
// (master seed, replicate index), so results never depend on scheduling.

#pragma once

#include <cstdint>
#include <random>

namespace ssmt {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed of replicate r under a master seed: splitmix64(splitmix64(master) ^ r).
constexpr std::uint64_t child_seed(std::uint64_t master, std::uint64_t replicate) noexcept {
    return splitmix64(splitmix64(master) ^ replicate);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace ssmt
