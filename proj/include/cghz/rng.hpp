// Deterministic 64-bit generator used for every seeded draw in the library.
//
// The algorithm is SplitMix64 (Steele, Lea & Flood's splittable generator as
// published in the public-domain reference implementation). It is fixed here
// rather than delegated to <random> because the library promises bit-identical
// measurement trajectories for equal seeds on every platform, and the standard
// distributions make no such guarantee.

#pragma once

#include <cmath>
#include <cstdint>

namespace cghz {

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    /// Next raw 64-bit word.
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) built from the top 53 bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal deviate via Box-Muller. Depends on libm, so values may
    /// differ in the last ulp across C libraries; use for tolerance-checked
    /// quantities only, never for trajectory decisions.
    double next_gaussian();

  private:
    std::uint64_t state_;
};

inline double SplitMix64::next_gaussian() {
    double u1 = next_double();
    double u2 = next_double();
    if (u1 < 1e-300) u1 = 1e-300;
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

/// Seed for the i-th independent stream derived from a master seed. One
/// SplitMix64 step decorrelates neighbouring trial indices.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return SplitMix64(master + index).next();
}

}  // namespace cghz
