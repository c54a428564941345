#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace parp {

// splitmix64 finalizer; used to derive independent child seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic seeded RNG. Draws are defined in terms of raw mt19937_64
// output only (no std::*_distribution), so identical seeds give identical
// streams on every platform. Substreams split by counter keep per-image
// generation order-independent.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  SplitRng child(std::uint64_t index) const {
    return SplitRng(mix_seed(seed_, index));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inclusive bounds.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() %
                                 static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Box-Muller from two uniforms; the cosine branch only, so one call
  // consumes exactly two engine draws.
  double gaussian(double sigma) {
    if (sigma == 0.0) {
      next_u64();
      next_u64();
      return 0.0;
    }
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) {
      u1 = 0x1.0p-53;
    }
    return sigma * std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
  }

  // Knuth inversion; fine for the small rates used here.
  int poisson(double lambda) {
    if (lambda <= 0.0) {
      return 0;
    }
    const double limit = std::exp(-lambda);
    double product = 1.0;
    int count = -1;
    do {
      ++count;
      product *= uniform();
    } while (product > limit);
    return count;
  }

  // Index in [0, weights.size()) drawn proportionally to weights.
  template <typename Weights>
  int weighted_index(const Weights& weights) {
    double total = 0.0;
    for (double w : weights) {
      total += w;
    }
    double r = uniform() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      r -= weights[i];
      if (r < 0.0) {
        return static_cast<int>(i);
      }
    }
    return static_cast<int>(weights.size()) - 1;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace parp
