#pragma once

// Shared construction helpers for the unit tests.  Everything here builds
// reference data by direct summation or direct recurrences -- no FFT, no
// library norm code -- so tests compare two independent routes to the same
// value.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "kdvlab/grid.hpp"

namespace testutil {

using kdvlab::Complex;
using kdvlab::GridFunction;

struct Mode {
  long n = 0;  // integer frequency, xi = 2 pi n / L
  Complex amp{0.0, 0.0};
};

// u(x_i) = sum_m amp_m e^{i xi_m x_i}, evaluated pointwise.
inline GridFunction from_modes(std::size_t n, double length,
                               const std::vector<Mode>& modes) {
  GridFunction u(n, length);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = u.x(i);
    Complex v(0.0, 0.0);
    for (const auto& m : modes) {
      const double xi = 2.0 * M_PI * static_cast<double>(m.n) / length;
      v += m.amp * std::exp(Complex(0.0, xi * x));
    }
    u.samples[i] = v;
  }
  return u;
}

// Same modes differentiated r times: amp -> (i xi)^r amp.
inline std::vector<Mode> differentiate_modes(const std::vector<Mode>& modes,
                                             double length, int r) {
  std::vector<Mode> out = modes;
  for (auto& m : out) {
    const double xi = 2.0 * M_PI * static_cast<double>(m.n) / length;
    for (int q = 0; q < r; ++q) m.amp *= Complex(0.0, xi);
  }
  return out;
}

// Complex white noise, deterministic in the seed.
inline GridFunction random_grid(std::size_t n, double length,
                                std::uint64_t seed) {
  GridFunction u(n, length);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (auto& v : u.samples) v = Complex(unif(rng), unif(rng));
  return u;
}

// Real-valued mode pair c e^{i xi x} + conj: keeps test data real where the
// scenario calls for it.
inline std::vector<Mode> real_pair(long n, Complex c) {
  return {Mode{n, c}, Mode{-n, std::conj(c)}};
}

inline double rel_diff(const GridFunction& a, const GridFunction& b) {
  double scale = std::max(kdvlab::max_abs(a), kdvlab::max_abs(b));
  if (scale == 0.0) return 0.0;
  return kdvlab::max_abs(a - b) / scale;
}

}  // namespace testutil
