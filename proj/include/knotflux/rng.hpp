#pragma once

#include <cstdint>

namespace knotflux {

/// Counter-addressable splitmix64 stream. Every draw is a pure function of
/// (seed, counter), so consumers can be evaluated in any order or from any
/// thread and still produce identical values.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t at(std::uint64_t counter) const {
        return mix(seed_ + (counter + 1) * 0x9E3779B97F4A7C15ull);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01(std::uint64_t counter) const {
        return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
    }

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
};

} // namespace knotflux
