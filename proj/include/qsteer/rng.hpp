#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qsteer/errors.hpp"

namespace qsteer {

// SplitMix64 step; used to derive independent per-trial seeds from one user
// seed. Deterministic and collision-resistant enough for seed streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed + 0x632be59bd9b4e019ULL * (stream + 1));
}

// Seeded random source built on std::mt19937_64. The standard engine is
// bit-exact across platforms; the standard <random> distributions are not,
// so uniform, normal and Poisson draws are spelled out here explicitly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform double in [0, 1) with 53 random mantissa bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; one value per call, two uniforms consumed.
  double normal() {
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Poisson draw. Mean below kPoissonInversionLimit uses CDF inversion by
  // sequential search; larger means use the rounded normal approximation
  // with negative draws rejected (relative moment error O(1/sqrt(mean))).
  long long poisson(double mean) {
    if (!(mean >= 0.0)) throw ParameterError("poisson mean must be nonnegative");
    if (mean == 0.0) return 0;
    if (mean < kPoissonInversionLimit) {
      const double u = uniform01();
      double p = std::exp(-mean);
      double cdf = p;
      long long k = 0;
      while (u > cdf && k < 1024) {
        ++k;
        p *= mean / static_cast<double>(k);
        cdf += p;
      }
      return k;
    }
    double x;
    do {
      x = mean + std::sqrt(mean) * normal();
    } while (x < -0.5);
    return std::llround(x);
  }

  static constexpr double kPoissonInversionLimit = 30.0;

 private:
  std::mt19937_64 gen_;
};

}  // namespace qsteer
