#pragma once

#include <cstdint>
#include <random>

#include "tow/common.hpp"

namespace tow {

// mt19937_64 engine with our own value mappings. The engine output sequence
// is fixed by the standard and the mappings below avoid the
// implementation-defined std::*_distribution classes, so identical seeds give
// identical streams on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Independent per-trial stream derived from (master seed, trial index).
  static Rng for_trial(std::uint64_t master, std::uint64_t trial) {
    return Rng(mix(mix(master) ^ mix(trial + 0x51ed270b0f4a9c11ull)));
  }

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Unbiased uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= lim);
    return v % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform point in the open Euclidean ball of the given radius, by
  // rejection from the bounding cube.
  Point uniform_ball(int dim, double radius) {
    Point x = pt_zero();
    while (true) {
      double s = 0.0;
      for (int i = 0; i < dim; ++i) {
        x[i] = uniform(-1.0, 1.0);
        s += x[i] * x[i];
      }
      if (s < 1.0) break;
    }
    return pt_scale(x, radius);
  }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  std::mt19937_64 eng_;
};

}  // namespace tow
