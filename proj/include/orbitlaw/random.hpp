#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace orbitlaw::rng {

using Engine = std::mt19937_64;

// Uniform double in [0, 1). Built from raw engine output so the mapping is
// identical on every standard library implementation.
inline double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform(Engine& eng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(eng);
}

// Uniform integer in [0, n). Lemire-style multiply-shift, no rejection.
inline std::uint64_t uniform_index(Engine& eng, std::uint64_t n) {
    const unsigned __int128 product = static_cast<unsigned __int128>(eng()) * n;
    return static_cast<std::uint64_t>(product >> 64);
}

// Standard normal via Box-Muller on uniform01.
inline double normal(Engine& eng) {
    double u1 = uniform01(eng);
    while (u1 <= 0.0) u1 = uniform01(eng);
    const double u2 = uniform01(eng);
    const double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace orbitlaw::rng
