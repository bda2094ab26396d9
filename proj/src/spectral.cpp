#include "kdvlab/spectral.hpp"

#include <cmath>
#include <string>

#include "kdvlab/fft.hpp"

namespace kdvlab {
namespace {

// e^{-i xi_n x_i} = (-1)^n e^{-2 pi i n i / N} on the centered grid; N is
// even, so the sign depends only on the slot parity.
void apply_parity_sign(std::vector<Complex>& v) {
  for (std::size_t s = 1; s < v.size(); s += 2) v[s] = -v[s];
}

}  // namespace

Spectrum analyze(const GridFunction& u) {
  u.validate();
  Spectrum s;
  s.domain_length = u.domain_length;
  s.amp.resize(u.size());
  fft::forward(u.samples.data(), s.amp.data(), u.size());
  apply_parity_sign(s.amp);
  double inv = 1.0 / static_cast<double>(u.size());
  for (auto& c : s.amp) c *= inv;
  return s;
}

GridFunction synthesize(const Spectrum& s) {
  GridFunction u(s.size(), s.domain_length);
  std::vector<Complex> tmp = s.amp;
  apply_parity_sign(tmp);
  fft::backward(tmp.data(), u.samples.data(), s.size());
  return u;
}

std::vector<Complex> fourier_forward(const GridFunction& u) {
  Spectrum s = analyze(u);
  double root = std::sqrt(static_cast<double>(u.size()));
  for (auto& c : s.amp) c *= root;
  return s.amp;
}

GridFunction fourier_inverse(const std::vector<Complex>& coef, double domain_length) {
  Spectrum s;
  s.amp = coef;
  s.domain_length = domain_length;
  double inv_root = 1.0 / std::sqrt(static_cast<double>(coef.size()));
  for (auto& c : s.amp) c *= inv_root;
  return synthesize(s);
}

GridFunction apply_multiplier(const GridFunction& u,
                              const std::function<Complex(double)>& m) {
  Spectrum s = analyze(u);
  for (std::size_t slot = 0; slot < s.size(); ++slot) s.amp[slot] *= m(s.xi(slot));
  return synthesize(s);
}

GridFunction spectral_derivative(const GridFunction& u, int r) {
  if (r < 0 || r > 3)
    throw ConfigError("spectral derivative order must be in 0..3");
  if (r == 0) return u;
  return apply_multiplier(u, [r](double xi) {
    Complex ixi(0.0, xi);
    Complex m = ixi;
    for (int p = 1; p < r; ++p) m *= ixi;
    return m;
  });
}

GridFunction airy_propagate(const GridFunction& u, double t) {
  return apply_multiplier(u, [t](double xi) {
    return std::exp(Complex(0.0, t * xi * xi * xi));
  });
}

GridFunction flow_propagate(const GridFunction& u, double t, Complex abar) {
  if (abar == Complex(0.0, 0.0)) return airy_propagate(u, t);
  // Positive real growth rates blow up like e^{Re(abar) xi^2 t}; refuse well
  // before double overflow since such runs carry no information anyway.
  double nyq = M_PI * static_cast<double>(u.size()) / u.domain_length;
  double worst = abar.real() * nyq * nyq * std::fabs(t);
  if (worst > 600.0)
    throw BudgetError("constant-coefficient flow overflows: Re(mean) xi^2 t = " +
                      std::to_string(worst));
  return apply_multiplier(u, [t, abar](double xi) {
    Complex expo = Complex(0.0, t * xi * xi * xi) + abar * (t * xi * xi);
    return std::exp(expo);
  });
}

GridFunction band_project(const GridFunction& u, int j) {
  int jm = grid_j_max(u);
  if (j < 0 || j > jm)
    throw ConfigError("dyadic band " + std::to_string(j) +
                      " outside budget 0.." + std::to_string(jm));
  return apply_multiplier(u, [j](double xi) {
    return Complex(cutoff::phi_band(j, xi), 0.0);
  });
}

GridFunction lowpass_project(const GridFunction& u, int k) {
  if (k < 0) throw ConfigError("negative low-pass level");
  double s = std::ldexp(1.0, -k);
  return apply_multiplier(u, [s](double xi) {
    return Complex(cutoff::phi0(s * xi), 0.0);
  });
}

int grid_j_max(const GridFunction& u) {
  return cutoff::j_max(u.size(), u.domain_length);
}

GridFunction budget_project(const GridFunction& u) {
  double budget = cutoff::budget_frequency(u.size(), u.domain_length);
  return apply_multiplier(u, [budget](double xi) {
    return Complex(std::fabs(xi) <= budget ? 1.0 : 0.0, 0.0);
  });
}

double budget_overflow_fraction(const GridFunction& u) {
  Spectrum s = analyze(u);
  double budget = cutoff::budget_frequency(u.size(), u.domain_length);
  double above = 0.0, total = 0.0;
  for (std::size_t slot = 0; slot < s.size(); ++slot) {
    double mass = std::norm(s.amp[slot]);
    total += mass;
    if (std::fabs(s.xi(slot)) > budget) above += mass;
  }
  if (total == 0.0) return 0.0;
  return std::sqrt(above / total);
}

void require_within_budget(const GridFunction& u, double tol, const char* who) {
  double f = budget_overflow_fraction(u);
  if (f > tol)
    throw BudgetError(std::string(who) +
                      ": coefficient mass above the frequency budget (fraction " +
                      std::to_string(f) + ")");
}

GridFunction antiderivative_from_zero(const GridFunction& u) {
  Spectrum s = analyze(u);
  s.amp[0] = Complex(0.0, 0.0);  // drop the mean
  for (std::size_t slot = 1; slot < s.size(); ++slot)
    s.amp[slot] /= Complex(0.0, s.xi(slot));
  GridFunction p = synthesize(s);
  Complex at_zero = p.samples[p.size() / 2];  // x = 0 sits at slot N/2
  for (auto& v : p.samples) v -= at_zero;
  return p;
}

GridFunction refine_grid(const GridFunction& u, std::size_t refine) {
  if (refine == 0 || (refine & (refine - 1)) != 0)
    throw ConfigError("grid refinement factor must be a power of two");
  if (refine == 1) return u;
  Spectrum src = analyze(u);
  Spectrum dst;
  dst.domain_length = u.domain_length;
  dst.amp.assign(u.size() * refine, Complex(0.0, 0.0));
  long big = static_cast<long>(dst.amp.size());
  for (std::size_t slot = 0; slot < src.size(); ++slot) {
    long f = src.freq_index(slot);
    long dslot = f >= 0 ? f : f + big;
    dst.amp[static_cast<std::size_t>(dslot)] = src.amp[slot];
  }
  return synthesize(dst);
}

SpaceTimeFunction band_project(const SpaceTimeFunction& u, int j) {
  SpaceTimeFunction r = u;
  for (auto& s : r.slices) s = band_project(s, j);
  return r;
}

SpaceTimeFunction spectral_derivative(const SpaceTimeFunction& u, int r) {
  SpaceTimeFunction out = u;
  for (auto& s : out.slices) s = spectral_derivative(s, r);
  return out;
}

}  // namespace kdvlab
