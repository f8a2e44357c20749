#pragma once

#include <cstdint>

#include "g2flow/profile.hpp"

namespace g2flow {

// All randomness in the project flows through this seeded splitmix64
// generator, so runs are reproducible across platforms from the seed alone.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    // uniform in [0,1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    // uniform in [a,b)
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    // uniform integer in [0, m)
    std::uint64_t below(std::uint64_t m) { return next() % m; }

  private:
    std::uint64_t state_;
};

// Band-limited zero-mean profile: modes 1..kmax, coefficients in
// [-amp, amp] scaled by 1/k.
Profile random_tangent(Grid grid, SplitMix64& rng, int kmax, double amp);

// Positive profile 1 + (band-limited perturbation bounded by amp < 1),
// optionally normalized to unit mass.
PositiveProfile random_positive(Grid grid, SplitMix64& rng, int kmax, double amp, bool unit_mass = false);

}  // namespace g2flow
