#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "kdvlab/errors.hpp"

namespace kdvlab {

using Complex = std::complex<double>;

// Periodic grid sample vector on [-L/2, L/2): x_i = -L/2 + i h, h = L/N.
// N is a power of two >= 8.  Values are complex throughout; real-valued data
// is a property (conjugate-symmetric coefficients), not a separate type.
struct GridFunction {
  std::vector<Complex> samples;
  double domain_length = 0.0;

  GridFunction() = default;
  GridFunction(std::size_t n, double length)
      : samples(n, Complex(0.0, 0.0)), domain_length(length) {
    validate();
  }

  std::size_t size() const { return samples.size(); }
  double spacing() const { return domain_length / static_cast<double>(samples.size()); }
  double x(std::size_t i) const {
    return -0.5 * domain_length + spacing() * static_cast<double>(i);
  }

  void validate() const {
    std::size_t n = samples.size();
    if (n < 8 || (n & (n - 1)) != 0)
      throw ConfigError("grid size must be a power of two and at least 8");
    if (!(domain_length > 0.0)) throw ConfigError("domain length must be positive");
  }
};

bool same_grid(const GridFunction& a, const GridFunction& b);
void require_same_grid(const GridFunction& a, const GridFunction& b);

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(Complex c, const GridFunction& a);
GridFunction operator*(double c, const GridFunction& a);
// Plain pointwise product on the shared grid (aliasing is the caller's
// concern; see dealiased_product for band-safe evaluation).
GridFunction pointwise(const GridFunction& a, const GridFunction& b);

double max_abs(const GridFunction& a);
// sqrt(h sum |u_i|^2): the grid L^2(dx) norm.
double l2_norm(const GridFunction& a);
double mean_value_real(const GridFunction& a);
Complex mean_value(const GridFunction& a);
// Relative asymmetry of the coefficients under conjugate reflection; ~0 for
// real-valued data.
double realness_defect(const GridFunction& a);

// Fourier coefficients in DFT slot order: slot s holds integer frequency
// n = s for s <= N/2 and n = s - N otherwise (n in (-N/2, N/2]); the physical
// frequency is xi_n = 2 pi n / L.  Amplitude convention: u(x) = sum_n
// amp[n] e^{i xi_n x}, which makes zero-padding and grid refinement exact
// coefficient copies.
struct Spectrum {
  std::vector<Complex> amp;
  double domain_length = 0.0;

  std::size_t size() const { return amp.size(); }
  long freq_index(std::size_t slot) const {
    long n = static_cast<long>(slot);
    long N = static_cast<long>(amp.size());
    return slot <= amp.size() / 2 ? n : n - N;
  }
  double xi(std::size_t slot) const;
};

// Time slices at t_j = t_start + j (t_end - t_start)/M, j = 0..M.  At least
// 4 intervals so trapezoid integrals and one-sided difference stencils fit.
struct SpaceTimeFunction {
  std::vector<GridFunction> slices;
  double t_start = 0.0;
  double t_end = 1.0;

  std::size_t intervals() const { return slices.size() - 1; }
  double dt() const { return (t_end - t_start) / static_cast<double>(intervals()); }
  double time(std::size_t j) const { return t_start + dt() * static_cast<double>(j); }
  void validate() const {
    if (slices.size() < 5)
      throw ConfigError("space-time function needs at least 4 time intervals");
    if (!(t_end > t_start)) throw ConfigError("empty time interval");
    for (const auto& s : slices) require_same_grid(s, slices.front());
  }
};

SpaceTimeFunction st_constant(const GridFunction& u, std::size_t intervals,
                              double t_start, double t_end);
SpaceTimeFunction operator+(const SpaceTimeFunction& a, const SpaceTimeFunction& b);
SpaceTimeFunction operator-(const SpaceTimeFunction& a, const SpaceTimeFunction& b);
SpaceTimeFunction operator*(double c, const SpaceTimeFunction& a);

}  // namespace kdvlab
