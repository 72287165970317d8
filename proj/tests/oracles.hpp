#pragma once

// Test-only numerical helpers. These deliberately share nothing with the
// library's solution paths: the minimizer is derivative-free and the
// derivative check is a plain central difference.

#include <cmath>
#include <random>

namespace oracles {

// Golden-section minimizer on [lo, hi]; assumes a unimodal objective.
template <typename F>
double golden_min(const F& f, double lo, double hi) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-12) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = f(x2);
    }
  }
  return (a + b) / 2;
}

template <typename F>
double central_diff(const F& f, double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

}  // namespace oracles
