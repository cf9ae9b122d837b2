#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "citesim/errors.hpp"

namespace citesim {

// All randomness in this project flows through mt19937_64 streams seeded via
// make_stream, with variates produced by the helpers below instead of the
// std::*_distribution classes (whose output is implementation-defined).
// This keeps runs bit-reproducible across standard libraries and platforms.
using Rng = std::mt19937_64;

// SplitMix64 finalizer, used to spread (seed, stream) pairs over 64 bits.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stream `stream` of a master seed. Distinct streams are statistically
// independent for any (seed, stream) pairs that differ.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(~stream)));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

// Poisson variate by sequential CDF inversion. Large means are split into
// chunks so the running pmf never underflows; cost is O(lambda) per draw.
long long sample_poisson(Rng& rng, double lambda);

// Integer power law on {1, ..., max_value} with P(k) proportional to
// k^(-exponent). Sampling inverts a tabulated CDF; the table is exact up to
// rounding of the normalizing sum.
class DiscretePowerLaw {
  public:
    DiscretePowerLaw(double exponent, int max_value);

    int sample(Rng& rng) const;
    double pmf(int k) const;
    double mean() const;
    int max_value() const { return max_value_; }
    double exponent() const { return exponent_; }

  private:
    std::vector<double> cdf_;
    double exponent_;
    int max_value_;
};

}  // namespace citesim
