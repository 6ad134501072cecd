#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace aoimdp {

// Deterministic random source used everywhere in the project. All
// distributions are implemented on top of mt19937_64 (whose output is
// fixed by the standard) instead of the std:: distribution objects,
// whose algorithms vary between standard libraries. This keeps seeded
// runs bit-identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t uniform_index(std::uint64_t n) {
    // Modulo bias is negligible for n << 2^64.
    return engine_() % n;
  }

  // Standard normal via Box-Muller, caching the second deviate.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  double gaussian(double mean, double stddev) {
    return mean + stddev * gaussian();
  }

  double exponential(double rate) {
    if (rate <= 0.0) throw std::invalid_argument("exponential rate must be > 0");
    double u = uniform01();
    while (u <= 0.0) u = uniform01();
    return -std::log(u) / rate;
  }

  // Inversion by sequential search; fine for the moderate means used here.
  std::uint64_t poisson(double mean) {
    if (mean <= 0.0) throw std::invalid_argument("poisson mean must be > 0");
    if (mean > 100.0) throw std::invalid_argument("poisson mean too large for inversion sampler");
    const double u = uniform01();
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    while (u >= cdf && k < 10000) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }

  // Geometric on {1, 2, ...} with success probability p; mean 1/p.
  std::uint64_t geometric(double p) {
    if (p <= 0.0 || p > 1.0) throw std::invalid_argument("geometric p must be in (0, 1]");
    if (p == 1.0) return 1;
    double u = uniform01();
    while (u <= 0.0) u = uniform01();
    return 1 + static_cast<std::uint64_t>(std::floor(std::log(u) / std::log1p(-p)));
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Derives an independent stream seed, e.g. for per-trial fan-out.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 finalizer over base ^ index.
  std::uint64_t z = base ^ (index * 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace aoimdp
