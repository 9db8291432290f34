#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace brickwork {

// splitmix64 step; also used to hash stream ids into child seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Child seed for an independent stream, stable across platforms and
// independent of scheduling. ids identify (trial, brick, purpose, ...).
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> ids) {
  std::uint64_t s = master ^ 0xa0761d6478bd642fULL;
  for (std::uint64_t id : ids) {
    s ^= splitmix64(s) + id;
    (void)splitmix64(s);
  }
  return splitmix64(s);
}

// Deterministic generator with explicit distributions. We avoid the
// std <random> distributions because their output is not pinned by the
// standard; this keeps logs byte-reproducible for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // decorrelate trivially related seeds
    (void)splitmix64(state_);
  }

  std::uint64_t next_u64() { return splitmix64(state_); }

  // [0, 1)
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t uniform_index(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

  // Box-Muller (single value per call; partner value discarded).
  double normal(double mean = 0.0, double sigma = 1.0) {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sigma * r * std::cos(2.0 * M_PI * u2);
  }

  // Gaussian truncated at +/- n_sigma by rejection.
  double truncated_normal(double mean, double sigma, double n_sigma = 3.0) {
    if (sigma <= 0.0) return mean;
    for (;;) {
      const double x = normal(0.0, 1.0);
      if (std::abs(x) <= n_sigma) return mean + sigma * x;
    }
  }

  // Log-normal parameterized by its mean and coefficient of variation.
  double lognormal_mean_cv(double mean, double cv) {
    if (mean <= 0.0 || cv <= 0.0) return mean;
    const double s2 = std::log(1.0 + cv * cv);
    const double mu = std::log(mean) - 0.5 * s2;
    return std::exp(mu + std::sqrt(s2) * normal());
  }

 private:
  std::uint64_t state_;
};

}  // namespace brickwork
