#pragma once

#include <cstdint>
#include <utility>

namespace normlab {

// Counter-based 64-bit generator (SplitMix64). The exact recurrence is
// part of the reproducibility contract and is documented in the README:
//   state += 0x9E3779B97F4A7C15
//   z = state; z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
//   z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31
// Doubles use the top 53 bits. Gaussians use Box-Muller on consecutive
// uniform draws (no rejection), so the stream position is a pure
// function of the draw count.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Subsidiary stream keyed by (seed, index); draws in one stream do
    // not perturb any other.
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        return Rng(mix(seed ^ mix(index + 0x9E3779B97F4A7C15ULL)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform integer in [0, bound), bound >= 1.
    int below(int bound) {
        return static_cast<int>(next_u64() % static_cast<std::uint64_t>(bound));
    }

    // One Box-Muller pair of independent standard normals.
    std::pair<double, double> gaussian_pair();

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

  private:
    std::uint64_t state_;
};

}  // namespace normlab
