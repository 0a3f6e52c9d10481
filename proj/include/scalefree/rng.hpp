#pragma once

// Seeded, platform-stable random number generation. SplitMix64 keeps every
// stream a pure function of its seed, so simulated paths are reproducible
// bit for bit from the metadata they record.

#include <cmath>
#include <cstdint>

namespace scalefree {

inline constexpr std::uint64_t splitmix64_gamma = 0x9E3779B97F4A7C15ull;

/// SplitMix64 finalizer.
inline std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        state_ += splitmix64_gamma;
        return splitmix64_mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via the Box-Muller transform; draws come in pairs and
    /// the second one is cached.
    double normal() noexcept {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

  private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

/// Pure splitting function for per-epoch signs: epoch j of a path seeded
/// with `seed` gets the top bit of splitmix64_mix(seed + (j+1)*gamma).
/// Epochs can therefore be generated independently and in any order.
inline int epoch_sign(std::uint64_t seed, std::uint64_t epoch_index) noexcept {
    const std::uint64_t z =
        splitmix64_mix(seed + (epoch_index + 1) * splitmix64_gamma);
    return (z >> 63) ? -1 : 1;
}

}  // namespace scalefree
