#include "kdvlab/oracle.hpp"

#include <cmath>

#include "kdvlab/spectral.hpp"

namespace kdvlab {

void OracleConfig::validate() const {
  if (substeps_per_unit < 64 ||
      (substeps_per_unit & (substeps_per_unit - 1)) != 0)
    throw ConfigError("substeps per unit must be a power of two >= 64");
  if (output_intervals < 4)
    throw ConfigError("need at least 4 output intervals");
  if (scheme != "if-rk4")
    throw ConfigError("unknown oracle scheme: " + scheme);
}

double stability_rate(const Nonlinearity& f, const GridFunction& u) {
  std::array<GridFunction, 3> fields{u, spectral_derivative(u, 1),
                                     spectral_derivative(u, 2)};
  std::array<double, 3> m{max_abs(fields[0]), max_abs(fields[1]),
                          max_abs(fields[2])};
  double ximax = M_PI * static_cast<double>(u.size()) / u.domain_length;
  double rho = 0.0;
  for (const auto& t : f.terms) {
    double c = std::abs(t.coefficient);
    if (c == 0.0) continue;
    for (int r = 0; r < 3; ++r) {
      if (t.alpha[static_cast<std::size_t>(r)] == 0) continue;
      double part = c * t.alpha[static_cast<std::size_t>(r)];
      for (int q = 0; q < r; ++q) part *= ximax;
      for (int rp = 0; rp < 3; ++rp) {
        int pow = t.alpha[static_cast<std::size_t>(rp)] - (rp == r ? 1 : 0);
        for (int q = 0; q < pow; ++q) part *= m[static_cast<std::size_t>(rp)];
      }
      rho += part;
    }
  }
  return rho;
}

namespace {

// Spectral-side nonlinearity: synthesize, evaluate with the shared dealiased
// path, analyze.
Spectrum apply_nonlinearity(const Nonlinearity& f, const Spectrum& a) {
  GridFunction u = synthesize(a);
  std::array<GridFunction, 3> fields{u, spectral_derivative(u, 1),
                                     spectral_derivative(u, 2)};
  return analyze(evaluate_fields(f.terms, fields));
}

}  // namespace

SpaceTimeFunction oracle_solve(const GridFunction& u0, const Nonlinearity& f,
                               double t_end, const OracleConfig& cfg) {
  cfg.validate();
  f.validate();
  if (!(t_end > 0.0)) throw ConfigError("integration horizon must be positive");
  require_within_budget(u0, 1e-6, "oracle initial data");

  std::size_t n = u0.size();
  double dt_out = t_end / cfg.output_intervals;

  SpaceTimeFunction out;
  out.t_start = 0.0;
  out.t_end = t_end;
  out.slices.reserve(static_cast<std::size_t>(cfg.output_intervals) + 1);
  out.slices.push_back(u0);

  Spectrum state = analyze(u0);
  std::vector<Complex> ehalf(n), efull(n);
  double cached_h = -1.0;

  for (int m = 0; m < cfg.output_intervals; ++m) {
    double rho = stability_rate(f, synthesize(state));
    long sub = std::lround(
        std::max(1.0, static_cast<double>(cfg.substeps_per_unit) * dt_out));
    while (rho > 0.0 && (dt_out / static_cast<double>(sub)) * rho > 2.5)
      sub *= 2;
    double h = dt_out / static_cast<double>(sub);
    if (h != cached_h) {
      for (std::size_t slot = 0; slot < n; ++slot) {
        double xi = state.xi(slot);
        Complex lam(0.0, xi * xi * xi);
        ehalf[slot] = std::exp(0.5 * h * lam);
        efull[slot] = std::exp(h * lam);
      }
      cached_h = h;
    }

    for (long step = 0; step < sub; ++step) {
      double before = 0.0;
      for (const auto& c : state.amp) before += std::norm(c);

      Spectrum k1 = apply_nonlinearity(f, state);
      Spectrum u2 = state;
      for (std::size_t i = 0; i < n; ++i)
        u2.amp[i] = ehalf[i] * (state.amp[i] + 0.5 * h * k1.amp[i]);
      Spectrum k2 = apply_nonlinearity(f, u2);
      Spectrum u3 = state;
      for (std::size_t i = 0; i < n; ++i)
        u3.amp[i] = ehalf[i] * state.amp[i] + 0.5 * h * k2.amp[i];
      Spectrum k3 = apply_nonlinearity(f, u3);
      Spectrum u4 = state;
      for (std::size_t i = 0; i < n; ++i)
        u4.amp[i] = efull[i] * state.amp[i] + h * ehalf[i] * k3.amp[i];
      Spectrum k4 = apply_nonlinearity(f, u4);

      for (std::size_t i = 0; i < n; ++i)
        state.amp[i] =
            efull[i] * state.amp[i] +
            (h / 6.0) * (efull[i] * k1.amp[i] +
                         2.0 * ehalf[i] * (k2.amp[i] + k3.amp[i]) +
                         k4.amp[i]);

      double after = 0.0;
      for (const auto& c : state.amp) after += std::norm(c);
      if (after > 100.0 * before + 1e-300)
        throw BudgetError("step unstable: L2 norm grew tenfold in one step");
    }
    out.slices.push_back(synthesize(state));
  }
  return out;
}

}  // namespace kdvlab
