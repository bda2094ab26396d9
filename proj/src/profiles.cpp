#include "kdvlab/profiles.hpp"

#include <cmath>
#include <random>

#include "kdvlab/cutoff.hpp"
#include "kdvlab/errors.hpp"
#include "kdvlab/spectral.hpp"

namespace kdvlab {

namespace {

double wrap_centered(double x, double length) {
  double y = std::fmod(x + 0.5 * length, length);
  if (y < 0.0) y += length;
  return y - 0.5 * length;
}

double param(const std::map<std::string, double>& params,
             const std::string& key) {
  auto it = params.find(key);
  if (it == params.end())
    throw ConfigError("profile parameter missing: " + key);
  return it->second;
}

double param_or(const std::map<std::string, double>& params,
                const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

GridFunction gaussian_profile(std::size_t n, double length, double amplitude,
                              double width, double x0) {
  if (width <= 0.0) throw ConfigError("gaussian width must be positive");
  GridFunction u(n, length);
  for (std::size_t i = 0; i < n; ++i) {
    double d = wrap_centered(u.x(i) - x0, length);
    u.samples[i] = amplitude * std::exp(-d * d / (2.0 * width * width));
  }
  return u;
}

GridFunction sech_profile(std::size_t n, double length, double amplitude,
                          double width, double x0) {
  if (width <= 0.0) throw ConfigError("sech width must be positive");
  GridFunction u(n, length);
  for (std::size_t i = 0; i < n; ++i) {
    double d = wrap_centered(u.x(i) - x0, length);
    u.samples[i] = amplitude / std::cosh(d / width);
  }
  return u;
}

GridFunction soliton_profile(std::size_t n, double length, double speed,
                             double x0) {
  return soliton_at_time(n, length, speed, x0, 0.0);
}

GridFunction soliton_at_time(std::size_t n, double length, double speed,
                             double x0, double t) {
  if (speed <= 0.0) throw ConfigError("soliton speed must be positive");
  GridFunction u(n, length);
  double root = std::sqrt(speed);
  for (std::size_t i = 0; i < n; ++i) {
    double d = wrap_centered(u.x(i) - x0 - speed * t, length);
    double s = 1.0 / std::cosh(0.5 * root * d);
    u.samples[i] = 0.5 * speed * s * s;
  }
  return u;
}

GridFunction plane_wave_profile(std::size_t n, double length, double amplitude,
                                double frequency, double phase) {
  double base = 2.0 * M_PI / length;
  long mode = std::lround(frequency / base);
  if (std::abs(mode) > static_cast<long>(n) / 2 - 1)
    throw ConfigError("plane wave frequency exceeds the grid Nyquist range");
  double xi = base * static_cast<double>(mode);
  GridFunction u(n, length);
  for (std::size_t i = 0; i < n; ++i)
    u.samples[i] = amplitude * std::cos(xi * u.x(i) + phase);
  return u;
}

GridFunction random_band_profile(std::size_t n, double length, int band,
                                 std::uint64_t seed) {
  if (band < 0) throw ConfigError("band index must be nonnegative");
  if (band > cutoff::j_max(n, length))
    throw ConfigError("band index exceeds the grid budget");
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (band + 1)));
  std::normal_distribution<double> gauss(0.0, 1.0);
  double budget = cutoff::budget_frequency(n, length);
  Spectrum spec;
  spec.domain_length = length;
  spec.amp.assign(n, Complex(0.0, 0.0));
  for (long f = 1; f < static_cast<long>(n) / 2; ++f) {
    double xi = 2.0 * M_PI * static_cast<double>(f) / length;
    double shape = cutoff::phi_band(band, xi);
    // Draw unconditionally so the sample stream is independent of shape.
    double re = gauss(rng), im = gauss(rng);
    // The top band tapers past the admissible range; clip it so every
    // generated profile passes the budget gate.
    if (shape == 0.0 || xi > budget) continue;
    Complex a = shape * Complex(re, im);
    spec.amp[static_cast<std::size_t>(f)] = a;
    spec.amp[n - static_cast<std::size_t>(f)] = std::conj(a);
  }
  if (band == 0) {
    double re = gauss(rng);
    spec.amp[0] = Complex(re, 0.0) * cutoff::phi_band(0, 0.0);
  }
  GridFunction u = synthesize(spec);
  for (auto& s : u.samples) s = Complex(s.real(), 0.0);
  double norm = l2_norm(u);
  if (norm > 0.0) u = (1.0 / norm) * u;
  return u;
}

GridFunction random_smooth_profile(std::size_t n, double length, double decay,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double budget = cutoff::budget_frequency(n, length);
  Spectrum spec;
  spec.domain_length = length;
  spec.amp.assign(n, Complex(0.0, 0.0));
  spec.amp[0] = Complex(gauss(rng), 0.0);
  for (long f = 1; f < static_cast<long>(n) / 2; ++f) {
    double xi = 2.0 * M_PI * static_cast<double>(f) / length;
    double weight = std::pow(1.0 + std::abs(xi), -decay);
    Complex a = weight * Complex(gauss(rng), gauss(rng));
    if (xi > budget) continue;  // keep the profile admissible by construction
    spec.amp[static_cast<std::size_t>(f)] = a;
    spec.amp[n - static_cast<std::size_t>(f)] = std::conj(a);
  }
  GridFunction u = synthesize(spec);
  for (auto& s : u.samples) s = Complex(s.real(), 0.0);
  double norm = l2_norm(u);
  if (norm > 0.0) u = (1.0 / norm) * u;
  return u;
}

GridFunction make_profile(const std::string& name,
                          const std::map<std::string, double>& params,
                          std::size_t n, double length, std::uint64_t seed) {
  if (name == "gaussian")
    return gaussian_profile(n, length, param(params, "amplitude"),
                            param(params, "width"), param_or(params, "x0", 0.0));
  if (name == "sech")
    return sech_profile(n, length, param(params, "amplitude"),
                        param(params, "width"), param_or(params, "x0", 0.0));
  if (name == "soliton")
    return soliton_profile(n, length, param(params, "speed"),
                           param_or(params, "x0", 0.0));
  if (name == "plane_wave")
    return plane_wave_profile(n, length, param(params, "amplitude"),
                              param(params, "frequency"),
                              param_or(params, "phase", 0.0));
  if (name == "random_band")
    return random_band_profile(n, length,
                               static_cast<int>(param(params, "band")), seed);
  if (name == "random_smooth")
    return random_smooth_profile(n, length, param_or(params, "decay", 2.0),
                                 seed);
  if (name == "zero") return GridFunction(n, length);
  throw ConfigError("unknown profile: " + name);
}

}  // namespace kdvlab
