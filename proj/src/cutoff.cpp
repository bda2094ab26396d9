#include "kdvlab/cutoff.hpp"

#include <cmath>

#include "kdvlab/errors.hpp"

namespace kdvlab {
namespace cutoff {
namespace {

double q(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double sigma_profile(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = q(t);
  double b = q(1.0 - t);
  return a / (a + b);
}

double phi0(double xi) {
  double a = std::fabs(xi);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  return sigma_profile(2.0 - a);
}

double phi_band(int j, double xi) {
  if (j < 0) throw ConfigError("negative dyadic band index");
  if (j == 0) return phi0(xi);
  double s = std::ldexp(1.0, -j);  // 2^-j
  return phi0(s * xi) - phi0(2.0 * s * xi);
}

int j_max(std::size_t n, double domain_length) {
  double nyquist = M_PI * static_cast<double>(n) / domain_length;
  if (nyquist < 2.0)
    throw ConfigError("grid too coarse: no dyadic band fits under Nyquist");
  int j = 0;
  while (std::ldexp(1.0, j + 2) <= nyquist) ++j;
  return j;
}

double budget_frequency(std::size_t n, double domain_length) {
  return std::ldexp(1.0, j_max(n, domain_length));
}

}  // namespace cutoff
}  // namespace kdvlab
