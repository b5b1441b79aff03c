// Seeded randomness utilities. All stochastic choices in the library go
// through these helpers so that results depend only on the engine state,
// not on standard-library distribution internals.
#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace qls {

using Rng = std::mt19937_64;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Counter-based child-seed derivation. Fanning out (instance, k, trial) cells
// through this keeps ensembles reproducible piecewise: cell seeds never depend
// on execution order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag, std::uint64_t a = 0,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = splitmix64(master ^ splitmix64(tag));
    s = splitmix64(s ^ a);
    s = splitmix64(s ^ b);
    s = splitmix64(s ^ c);
    return s;
}

// Unbiased draw from [0, n). n must be >= 1.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    std::uint64_t r = rng();
    while (r < threshold) {
        r = rng();
    }
    return r % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_real01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_angle(Rng& rng) {
    return kTwoPi * uniform_real01(rng);
}

template <typename T>
void shuffle(std::vector<T>& values, Rng& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(values[i - 1], values[j]);
    }
}

template <typename T>
const T& pick_uniform(const std::vector<T>& values, Rng& rng) {
    return values[static_cast<std::size_t>(uniform_below(rng, values.size()))];
}

}  // namespace qls
