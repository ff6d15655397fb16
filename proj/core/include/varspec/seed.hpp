#pragma once

#include <cstdint>
#include <random>

namespace varspec {

// splitmix64: the mixing function used to derive independent sub-seeds from a
// root seed. Distinct inputs give statistically independent outputs, so
// derive_seed(root, k) for k = 0, 1, 2, ... is the project-wide split rule:
// any task that needs its own RNG stream takes derive_seed(parent, index).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    return splitmix64(root ^ splitmix64(index + 1));
}

// All sampling in the project goes through this generator type so that runs
// are reproducible from the recorded seeds alone.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits; fully specified, no
// implementation-defined std::distribution behaviour.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace varspec
