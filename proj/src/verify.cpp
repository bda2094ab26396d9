#include "kdvlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <utility>

#include "kdvlab/coefficients.hpp"
#include "kdvlab/cutoff.hpp"
#include "kdvlab/errors.hpp"
#include "kdvlab/grid.hpp"
#include "kdvlab/linear_solver.hpp"
#include "kdvlab/nonlinear_solver.hpp"
#include "kdvlab/nonlinearity.hpp"
#include "kdvlab/norms.hpp"
#include "kdvlab/oracle.hpp"
#include "kdvlab/profiles.hpp"
#include "kdvlab/rational.hpp"
#include "kdvlab/rescaling.hpp"
#include "kdvlab/spectral.hpp"

namespace kdvlab::verify {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

Nonlinearity single_term(Complex c, std::array<int, 3> alpha) {
  Nonlinearity f;
  Term t;
  t.coefficient = c;
  t.alpha = alpha;
  f.terms.push_back(t);
  return f;
}

// Random band data pushed through the free third-order flow; slices on [0,1].
SpaceTimeFunction airy_band(std::size_t n, double length, int band,
                            std::uint64_t seed, std::size_t m) {
  GridFunction u0 = random_band_profile(n, length, band, seed);
  SpaceTimeFunction u = st_constant(u0, m, 0.0, 1.0);
  for (std::size_t i = 0; i < u.slices.size(); ++i)
    u.slices[i] = airy_propagate(u0, u.time(i));
  return u;
}

// Random band data under a seeded sinusoidal time envelope; slices on [0,1].
SpaceTimeFunction modulated_band(std::size_t n, double length, int band,
                                 std::uint64_t seed, std::size_t m) {
  GridFunction g0 = random_band_profile(n, length, band, seed);
  std::mt19937_64 rng(seed ^ 0x5bd1e995u);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double omega = 0.5 + 3.0 * unif(rng);
  const double phase = 2.0 * M_PI * unif(rng);
  SpaceTimeFunction g = st_constant(g0, m, 0.0, 1.0);
  for (std::size_t i = 0; i < g.slices.size(); ++i)
    g.slices[i] = std::cos(omega * g.time(i) + phase) * g0;
  return g;
}

SpaceTimeFunction st_product(const SpaceTimeFunction& u,
                             const SpaceTimeFunction& v) {
  SpaceTimeFunction w = u;
  for (std::size_t i = 0; i < w.slices.size(); ++i)
    w.slices[i] = dealiased_product(u.slices[i], v.slices[i]);
  return w;
}

SpaceTimeFunction st_product(const GridFunction& a,
                             const SpaceTimeFunction& u) {
  SpaceTimeFunction w = u;
  for (std::size_t i = 0; i < w.slices.size(); ++i)
    w.slices[i] = dealiased_product(a, u.slices[i]);
  return w;
}

// Max ratio per band over seeded family members, then the log2 growth rate
// of those maxima across bands.  A bounded constant shows up as slope near
// zero; a missing power of 2^j shows up as slope near its exponent.
struct FamilyFit {
  std::vector<double> max_ratio;
  double slope = 0.0;
  bool degenerate = false;  // some band had no nonzero members
};

FamilyFit fit_family(const std::vector<int>& bands, int seeds,
                     const std::function<double(int, int)>& ratio) {
  FamilyFit out;
  for (int j : bands) {
    double best = 0.0;
    for (int q = 0; q < seeds; ++q) best = std::max(best, ratio(j, q));
    out.max_ratio.push_back(best);
  }
  for (double v : out.max_ratio)
    if (!(v > 0.0)) out.degenerate = true;
  if (!out.degenerate) out.slope = fit_log2_slope(bands, out.max_ratio);
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += num(v[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// 1. Exact spectral identities.

CheckResult check_spectral_identities() {
  CheckResult r{"spectral_identities", false, "", 0.0};
  const std::size_t n = 2048;
  const double length = 64.0;
  GridFunction u = random_smooth_profile(n, length, 3.0, 11);
  const double scale = std::max(1.0, max_abs(u));

  const double round_trip = max_abs(synthesize(analyze(u)) - u) / scale;

  Spectrum sp = analyze(u);
  double mass_x = 0.0;
  for (const auto& v : u.samples) mass_x += std::norm(v);
  mass_x *= u.spacing();
  double mass_k = 0.0;
  for (const auto& a : sp.amp) mass_k += std::norm(a);
  mass_k *= length;
  const double parseval = std::abs(mass_x - mass_k) / mass_x;

  const int jm = grid_j_max(u);
  const double budget = std::ldexp(1.0, jm);
  double unity = 0.0;
  for (std::size_t slot = 0; slot < sp.size(); ++slot) {
    const double xi = std::abs(sp.xi(slot));
    if (xi > budget) continue;
    double sum = 0.0;
    for (int j = 0; j <= jm; ++j) sum += cutoff::phi_band(j, xi);
    unity = std::max(unity, std::abs(sum - 1.0));
  }

  double separation = 0.0;
  const std::pair<int, int> pairs[] = {{0, 2}, {1, 3}, {2, 4}, {3, 5}, {1, 4}};
  for (auto [i, j] : pairs)
    separation = std::max(
        separation, max_abs(band_project(band_project(u, i), j)) / scale);

  // A pure mode under the third-order flow picks up exactly the cubic phase.
  Spectrum mode;
  mode.amp.assign(n, Complex(0.0, 0.0));
  mode.domain_length = length;
  mode.amp[9] = Complex(1.0, 0.0);
  GridFunction pw = synthesize(mode);
  const double xi = 2.0 * M_PI * 9.0 / length;
  const double t = 0.37;
  GridFunction flow = airy_propagate(pw, t);
  const Complex phase = std::exp(Complex(0.0, t * xi * xi * xi));
  double airy = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    airy = std::max(airy, std::abs(flow.samples[i] - phase * pw.samples[i]));

  const double tol = 1e-12;
  r.pass = round_trip <= tol && parseval <= tol && unity <= tol &&
           separation <= tol && airy <= tol;
  r.detail = "round_trip=" + num(round_trip) + " parseval=" + num(parseval) +
             " unity=" + num(unity) + " separation=" + num(separation) +
             " airy=" + num(airy);
  return r;
}

// ---------------------------------------------------------------------------
// 2. Band projection commutes with the exact scale change.

CheckResult check_scaling_commutation() {
  CheckResult r{"scaling_commutation", false, "", 0.0};
  const std::size_t n = 512;
  const double length = 32.0;
  GridFunction u0 = random_band_profile(n, length, 2, 21) +
                    random_band_profile(n, length, 3, 22) +
                    random_band_profile(n, length, 4, 23);
  const Rational lambda(-2);
  double worst = 0.0;
  const std::pair<int, int> cases[] = {
      {1, 1}, {2, 1}, {3, 1}, {1, 2}, {2, 2}, {1, 3}};
  for (auto [j, k] : cases) {
    GridFunction left = band_project(rescale(u0, k, lambda), j);
    GridFunction right = rescale(band_project(u0, j + k), k, lambda);
    const double ref = std::max(1e-300, max_abs(right));
    worst = std::max(worst, max_abs(left - right) / ref);
  }
  r.pass = worst <= 1e-10;
  r.detail = "max_relative_error=" + num(worst);
  return r;
}

// ---------------------------------------------------------------------------
// 3. Low/high frequency decay rates under the scale change.

CheckResult check_scaling_rates() {
  CheckResult r{"scaling_rates", false, "", 0.0};
  GridFunction u0 = gaussian_profile(2048, 64.0, 1.0, 2.0);
  Nonlinearity f = single_term(Complex(1.0, 0.0), {1, 0, 1});
  SlopeTable table = verify_scaling_rates(u0, 3.0, f, {1, 2, 3, 4, 5});
  std::ostringstream d;
  for (const auto& e : table.entries) {
    d << e.estimate_id << "=" << num(e.fitted_slope) << "(bound "
      << num(e.bound) << (e.pass ? ",ok" : ",FAIL") << ") ";
  }
  r.pass = table.all_pass();
  r.detail = d.str();
  return r;
}

// ---------------------------------------------------------------------------
// 4. The gauge conjugation identity, applied both ways to random data.

CheckResult check_conjugation_identity() {
  CheckResult r{"conjugation_identity", false, "", 0.0};
  const std::size_t n = 2048;
  const double length = 64.0;
  GridFunction a = 0.3 * random_band_profile(n, length, 2, 31);
  for (auto& v : a.samples) v += Complex(0.2, 0.05);
  GridFunction w = random_band_profile(n, length, 3, 32);

  GaugeWeight gauge = make_gauge(a);
  double product_defect = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    product_defect = std::max(
        product_defect,
        std::abs(gauge.plus.samples[i] * gauge.minus.samples[i] - 1.0));

  const Complex abar = gauge.mean;
  GridFunction atil = a;
  for (auto& v : atil.samples) v -= abar;
  GridFunction ax = spectral_derivative(atil, 1);
  GridFunction axx = spectral_derivative(atil, 2);
  GridFunction a2 = dealiased_product(atil, atil);
  GridFunction a3 = dealiased_product(a2, atil);
  GridFunction p1 = ax + (1.0 / 3.0) * a2 + (2.0 / 3.0) * (abar * atil);
  GridFunction p0 = (2.0 / 27.0) * a3 - (1.0 / 3.0) * axx +
                    (1.0 / 9.0) * (abar * a2) - (1.0 / 3.0) * (abar * ax);

  // Left: the second-order operator applied to the gauged function.
  GridFunction v = dealiased_product(gauge.minus, w);
  GridFunction lhs = spectral_derivative(v, 3) +
                     dealiased_product(a, spectral_derivative(v, 2));
  // Right: the conjugated operator applied to w, then gauged back.
  GridFunction inner = spectral_derivative(w, 3) +
                       abar * spectral_derivative(w, 2) -
                       dealiased_product(p1, spectral_derivative(w, 1)) +
                       dealiased_product(p0, w);
  GridFunction rhs = dealiased_product(gauge.minus, inner);

  const double rel = l2_norm(lhs - rhs) / l2_norm(rhs);
  r.pass = rel <= 1e-8 && product_defect <= 1e-12;
  r.detail =
      "operator_rel_error=" + num(rel) + " gauge_product=" + num(product_defect);
  return r;
}

// ---------------------------------------------------------------------------
// 5. One defect-iteration pass contracts, harder at larger scale.

CheckResult check_linear_iteration() {
  CheckResult r{"linear_iteration", false, "", 0.0};
  Nonlinearity f = single_term(Complex(1.0, 0.0), {1, 0, 1});
  GridFunction u0 = gaussian_profile(512, 32.0, 2.0, 2.0);
  const Rational lambda = lambda_exponent(f);
  const double s = 3.0;
  std::vector<double> q;
  for (int k : {2, 3, 4}) {
    RescaledData data = prepare_rescaled_data(u0, k, lambda);
    FrozenCoefficients c = assemble(f, data);
    SpaceTimeFunction fr = st_constant(c.r, 16, 0.0, 1.0);
    GridFunction zero(c.r.size(), c.r.domain_length);
    const double fnorm = l1ys_norm(fr, s);
    auto [v, rep] = iterate_linear_solve(c.a, zero, fr, s, 1, 1e-300);
    q.push_back(rep.residual_norms.front() / fnorm);
  }
  const bool decreasing = q[1] <= q[0] && q[2] <= q[1];
  const bool small = q[2] < 0.5;

  // Vanishing second-order coefficient: the first pass is already exact.
  GridFunction a0(256, 16.0);
  GridFunction v0 = random_band_profile(256, 16.0, 2, 41);
  SpaceTimeFunction f0 = modulated_band(256, 16.0, 2, 42, 8);
  auto [v1, rep1] = iterate_linear_solve(a0, v0, f0, 2.0, 4, 1e-10);
  const bool one_pass = rep1.converged && rep1.iterations == 1;

  r.pass = decreasing && small && one_pass;
  r.detail = "defect_ratios(k=2,3,4)=" + join(q) +
             " zero_coefficient_iterations=" + std::to_string(rep1.iterations);
  return r;
}

// ---------------------------------------------------------------------------
// 6. Flow solution norm vs data plus forcing, across frequency bands.

CheckResult check_flow_bound_family() {
  CheckResult r{"flow_bound_family", false, "", 0.0};
  struct BandGrid {
    int j;
    std::size_t n;
    double length;
  };
  // One grid per band, cube side 2^{2j} kept well inside the domain and the
  // band kept well inside the frequency budget (pi N / L is constant).
  const BandGrid grids[] = {
      {1, 512, 32.0}, {2, 1024, 64.0}, {3, 4096, 256.0}, {4, 16384, 1024.0}};
  const double s = 2.0;
  const std::size_t m = 16;
  std::vector<int> bands;
  std::vector<double> worst;
  for (const auto& g : grids) {
    double best = 0.0;
    for (int q = 0; q < 5; ++q) {
      const std::uint64_t seed = 9000 + 137 * g.j + 11 * q;
      GridFunction w0 = random_band_profile(g.n, g.length, g.j, seed);
      SpaceTimeFunction forcing =
          modulated_band(g.n, g.length, g.j, seed + 57, m);
      SpaceTimeFunction w = duhamel_airy(w0, forcing);
      const double denom = l1hs_norm(w0, s) + l1ys_norm(forcing, s);
      if (denom > 0.0) best = std::max(best, l1xs_norm(w, s) / denom);
    }
    bands.push_back(g.j);
    worst.push_back(best);
  }
  const double slope = fit_log2_slope(bands, worst);
  r.pass = slope <= 0.2;
  r.detail = "max_ratios(j=1..4)=" + join(worst) + " slope=" + num(slope);
  return r;
}

// ---------------------------------------------------------------------------
// 7. Product estimates between the graded spaces.

CheckResult check_bilinear_suite() {
  CheckResult r{"bilinear_suite", false, "", 0.0};
  const std::size_t n = 4096;
  const double length = 64.0;
  const std::size_t m = 16;
  const std::vector<int> bands = {1, 2, 3, 4};
  const int seeds = 5;

  struct Estimate {
    const char* id;
    std::function<double(int, int)> ratio;
  };

  auto seed_of = [](int e, int j, int q) {
    return static_cast<std::uint64_t>(50000 + 1000 * e + 100 * j + q);
  };
  auto stat = [&](int e, int j, int q, int salt) {
    return random_band_profile(n, length, j, seed_of(e, j, q) + salt);
  };
  auto flow = [&](int e, int j, int q, int salt) {
    return airy_band(n, length, j, seed_of(e, j, q) + salt, m);
  };
  auto forcing = [&](int e, int j, int q, int salt) {
    return modulated_band(n, length, j, seed_of(e, j, q) + salt, m);
  };

  const std::vector<Estimate> estimates = {
      {"zygmund_algebra",
       [&](int j, int q) {
         GridFunction a = stat(0, j, q, 0), b = stat(0, j, q, 17);
         return zygmund_norm(dealiased_product(a, b), 1.0) /
                (zygmund_norm(a, 1.0) * zygmund_norm(b, 1.0));
       }},
      {"bernstein_l2_linf",
       [&](int j, int q) {
         GridFunction a = band_project(stat(1, j, q, 0), j);
         return l1_block_norm(a, 2 * j, BlockInner::LInf) /
                (std::exp2(0.5 * j) * l1_block_norm(a, 2 * j, BlockInner::L2));
       }},
      {"interval_change",
       [&](int j, int q) {
         GridFunction c =
             random_smooth_profile(n, length, 2.0, seed_of(2, j, q));
         return l1_block_norm(c, 2 * j, BlockInner::L2) /
                (2.0 * l1_block_norm(c, 2 * j + 2, BlockInner::L2));
       }},
      {"x_algebra",
       [&](int j, int q) {
         SpaceTimeFunction u = flow(3, j, q, 0), v = flow(3, j, q, 29);
         return l1xs_norm(st_product(u, v), 1.5) /
                (l1xs_norm(u, 1.5) * l1xs_norm(v, 1.5));
       }},
      {"h_algebra",
       [&](int j, int q) {
         GridFunction a = stat(4, j, q, 0), b = stat(4, j, q, 17);
         return l1hs_norm(dealiased_product(a, b), 1.0) /
                (l1hs_norm(a, 1.0) * l1hs_norm(b, 1.0));
       }},
      {"xx_to_y",
       [&](int j, int q) {
         SpaceTimeFunction u = flow(5, j, q, 0), v = flow(5, j, q, 29);
         return l1ys_norm(st_product(u, v), 1.0) /
                (l1xs_norm(u, 1.0) * l1xs_norm(v, 1.0));
       }},
      {"hx_to_y",
       [&](int j, int q) {
         GridFunction a = stat(6, j, q, 0);
         SpaceTimeFunction u = flow(6, j, q, 29);
         return l1ys_norm(st_product(a, u), 1.0) /
                (l1hs_norm(a, 1.0) * l1xs_norm(u, 1.0));
       }},
      {"zygmund_x_product",
       [&](int j, int q) {
         GridFunction a = stat(7, j, q, 0);
         SpaceTimeFunction u = flow(7, j, q, 29);
         return l1xs_norm(st_product(a, u), 1.0) /
                (zygmund_norm(a, 2.1) * l1xs_norm(u, 1.0));
       }},
      {"zygmund_y_product",
       [&](int j, int q) {
         GridFunction a = stat(8, j, q, 0);
         SpaceTimeFunction g = forcing(8, j, q, 29);
         return l1ys_norm(st_product(a, g), 1.6) /
                (zygmund_norm(a, 2.0) * l1ys_norm(g, 1.6));
       }},
      {"zygmund_h_product",
       [&](int j, int q) {
         GridFunction a = stat(9, j, q, 0), b = stat(9, j, q, 17);
         return l1hs_norm(dealiased_product(a, b), 1.5) /
                (zygmund_norm(a, 2.0) * l1hs_norm(b, 1.5));
       }},
  };

  bool all = true;
  std::ostringstream d;
  for (const auto& est : estimates) {
    FamilyFit fit = fit_family(bands, seeds, est.ratio);
    bool ok = fit.degenerate || fit.slope <= 0.2;
    all = all && ok;
    d << est.id << ": slope=" << (fit.degenerate ? "skip" : num(fit.slope))
      << " max=" << num(*std::max_element(fit.max_ratio.begin(),
                                          fit.max_ratio.end()))
      << (ok ? "" : " FAIL") << "; ";
  }
  r.pass = all;
  r.detail = d.str();
  return r;
}

// ---------------------------------------------------------------------------
// 8. The solution map contracts and its fixed point sits inside the ball.

CheckResult check_contraction_fixed_point() {
  CheckResult r{"contraction_fixed_point", false, "", 0.0};
  struct Case {
    const char* id;
    Nonlinearity f;
    double amplitude;
    double s;
  };
  const Case cases[] = {
      {"transport", single_term(Complex(-6.0, 0.0), {1, 1, 0}), 0.5, 2.0},
      {"second_order", single_term(Complex(1.0, 0.0), {1, 0, 1}), 0.3, 3.0},
  };
  bool all = true;
  std::ostringstream d;
  for (const auto& c : cases) {
    GridFunction u0 = gaussian_profile(512, 32.0, c.amplitude, 2.0);
    SolverConfig cfg;
    cfg.s = c.s;
    auto [u, rep] = solve_cauchy(u0, c.f, cfg);
    double max_ratio = 0.0;
    for (std::size_t i = 1; i < rep.picard_diffs.size(); ++i)
      if (rep.picard_diffs[i - 1] > 0.0)
        max_ratio = std::max(max_ratio,
                             rep.picard_diffs[i] / rep.picard_diffs[i - 1]);
    bool in_ball = true;
    if (rep.ball_radius > 0.0)
      for (double nrm : rep.iterate_norms)
        in_ball = in_ball && nrm <= rep.ball_radius * (1.0 + 1e-9);
    const bool ok = rep.converged && max_ratio < 1.0 &&
                    rep.fixed_point_residual < 1e-7 && in_ball;
    all = all && ok;
    d << c.id << ": k=" << rep.k << " contraction=" << num(max_ratio)
      << " residual=" << num(rep.fixed_point_residual)
      << " ball=" << (in_ball ? "ok" : "ESCAPED") << (ok ? "" : " FAIL")
      << "; ";
  }
  r.pass = all;
  r.detail = d.str();
  return r;
}

// ---------------------------------------------------------------------------
// 9. Pipeline vs independent integrator vs closed-form traveling wave.

CheckResult check_oracle_equivalence() {
  CheckResult r{"oracle_equivalence", false, "", 0.0};
  std::ostringstream d;
  bool all = true;

  {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = 2048;
    const double length = 32.0;
    const double speed = 4.0;
    Nonlinearity f = single_term(Complex(-6.0, 0.0), {1, 1, 0});
    GridFunction u0 = soliton_profile(n, length, speed, 0.0);
    SolverConfig cfg;
    cfg.s = 2.0;
    auto [up, rep] = solve_cauchy(u0, f, cfg);
    OracleConfig oc;
    oc.output_intervals = rep.time_intervals;
    SpaceTimeFunction uo = oracle_solve(u0, f, rep.t_end, oc);
    double vs_oracle = 0.0, vs_exact = 0.0;
    for (std::size_t i = 0; i < up.slices.size(); ++i) {
      vs_oracle = std::max(vs_oracle, l2_norm(up.slices[i] - uo.slices[i]));
      vs_exact = std::max(
          vs_exact, l2_norm(up.slices[i] - soliton_at_time(n, length, speed,
                                                           0.0, up.time(i))));
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool ok = vs_oracle < 1e-4 && vs_exact < 1e-4 && secs < 300.0;
    all = all && ok;
    d << "traveling_wave: k=" << rep.k << " T=" << num(rep.t_end)
      << " vs_oracle=" << num(vs_oracle) << " vs_exact=" << num(vs_exact)
      << " time=" << num(secs) << "s" << (ok ? "" : " FAIL") << "; ";
  }

  {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = 512;
    const double length = 32.0;
    Nonlinearity f = single_term(Complex(1.0, 0.0), {1, 0, 1});
    GridFunction u0 = gaussian_profile(n, length, 0.3, 2.0);
    SolverConfig cfg;
    cfg.s = 3.0;
    auto [up, rep] = solve_cauchy(u0, f, cfg);
    OracleConfig oc;
    oc.output_intervals = rep.time_intervals;
    SpaceTimeFunction uo = oracle_solve(u0, f, rep.t_end, oc);
    double vs_oracle = 0.0;
    for (std::size_t i = 0; i < up.slices.size(); ++i)
      vs_oracle = std::max(vs_oracle, l2_norm(up.slices[i] - uo.slices[i]));
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool ok = vs_oracle < 1e-4 && secs < 300.0;
    all = all && ok;
    d << "second_order_small: k=" << rep.k << " T=" << num(rep.t_end)
      << " vs_oracle=" << num(vs_oracle) << " time=" << num(secs) << "s"
      << (ok ? "" : " FAIL");
  }

  r.pass = all;
  r.detail = d.str();
  return r;
}

// ---------------------------------------------------------------------------
// 10. Solution difference scales linearly with the data difference.

CheckResult check_lipschitz_dependence() {
  CheckResult r{"lipschitz_dependence", false, "", 0.0};
  Nonlinearity f = single_term(Complex(-6.0, 0.0), {1, 1, 0});
  GridFunction u0 = gaussian_profile(512, 32.0, 1.0, 2.0);
  GridFunction bump = gaussian_profile(512, 32.0, 1.0, 1.5, 3.0);
  SolverConfig cfg;
  cfg.s = 2.0;
  std::vector<double> ratios;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    LipschitzReport rep = lipschitz_check(u0, u0 + eps * bump, f, cfg);
    ratios.push_back(rep.ratio);
  }
  const double lo = *std::min_element(ratios.begin(), ratios.end());
  const double hi = *std::max_element(ratios.begin(), ratios.end());
  r.pass = lo > 0.0 && hi / lo <= 4.0;
  r.detail = "ratios(eps=1e-1,1e-2,1e-3)=" + join(ratios) +
             " spread=" + num(lo > 0.0 ? hi / lo : 0.0);
  return r;
}

// ---------------------------------------------------------------------------
// 11. Zero data stays zero.

CheckResult check_uniqueness_probe() {
  CheckResult r{"uniqueness_probe", false, "", 0.0};
  struct Case {
    const char* id;
    Nonlinearity f;
    double s;
  };
  const Case cases[] = {
      {"transport", single_term(Complex(-6.0, 0.0), {1, 1, 0}), 2.0},
      {"second_order", single_term(Complex(1.0, 0.0), {1, 0, 1}), 3.0},
  };
  bool all = true;
  std::ostringstream d;
  for (const auto& c : cases) {
    GridFunction zero(512, 32.0);
    SolverConfig cfg;
    cfg.s = c.s;
    auto [u, rep] = solve_cauchy(zero, c.f, cfg);
    const double vnorm =
        rep.iterate_norms.empty() ? 0.0 : rep.iterate_norms.back();
    const double snorm = sup_t_l1hs(u, c.s);
    const bool ok = rep.converged && vnorm < 1e-8 && snorm < 1e-8;
    all = all && ok;
    d << c.id << ": high_part=" << num(vnorm) << " solution=" << num(snorm)
      << (ok ? "" : " FAIL") << "; ";
  }
  r.pass = all;
  r.detail = d.str();
  return r;
}

// ---------------------------------------------------------------------------
// 12. The exact exponent table.

CheckResult check_exponent_table() {
  CheckResult r{"exponent_table", false, "", 0.0};
  struct Row {
    std::array<int, 3> alpha;
    Rational sig, lam, reg;
  };
  const Row rows[] = {
      {{2, 0, 0}, {1, 2}, {-3, 1}, {1, 2}},
      {{3, 0, 0}, {1, 1}, {-3, 2}, {1, 1}},
      {{1, 1, 0}, {3, 2}, {-2, 1}, {3, 2}},
      {{1, 2, 0}, {2, 1}, {-1, 2}, {2, 1}},
      {{1, 0, 1}, {5, 2}, {-1, 1}, {5, 2}},
      {{0, 2, 0}, {5, 2}, {-1, 1}, {5, 2}},
      {{1, 0, 2}, {3, 1}, {1, 2}, {3, 1}},
      {{0, 1, 1}, {7, 2}, {0, 1}, {7, 2}},
      {{0, 0, 2}, {9, 2}, {1, 1}, {9, 2}},
  };
  bool all = true;
  std::ostringstream d;
  for (const auto& row : rows) {
    Nonlinearity f = single_term(Complex(1.0, 0.0), row.alpha);
    const bool ok = sigma0(f) == row.sig && lambda_exponent(f) == row.lam &&
                    s0(f) == row.reg;
    all = all && ok;
    if (!ok)
      d << "(" << row.alpha[0] << "," << row.alpha[1] << "," << row.alpha[2]
        << "): got sigma0=" << sigma0(f).str()
        << " lambda=" << lambda_exponent(f).str() << " s0=" << s0(f).str()
        << " want " << row.sig.str() << "," << row.lam.str() << ","
        << row.reg.str() << "; ";
  }
  // A mixed polynomial takes the worst row.
  Nonlinearity mixed;
  mixed.terms.push_back({Complex(1.0, 0.0), {2, 0, 0}});
  mixed.terms.push_back({Complex(0.5, 0.0), {0, 0, 2}});
  const bool mix_ok = sigma0(mixed) == Rational(9, 2) &&
                      lambda_exponent(mixed) == Rational(1) &&
                      s0(mixed) == Rational(9, 2);
  all = all && mix_ok;
  if (all) d << "9 single classes + 1 mixed polynomial exact";
  r.pass = all;
  r.detail = d.str();
  return r;
}

// ---------------------------------------------------------------------------

struct RegistryEntry {
  const char* id;
  double time_limit;  // seconds; 0 = no stated budget
  CheckResult (*fn)();
};

const RegistryEntry kRegistry[] = {
    {"spectral_identities", 10.0, check_spectral_identities},
    {"scaling_commutation", 0.0, check_scaling_commutation},
    {"scaling_rates", 120.0, check_scaling_rates},
    {"conjugation_identity", 0.0, check_conjugation_identity},
    {"linear_iteration", 0.0, check_linear_iteration},
    {"flow_bound_family", 0.0, check_flow_bound_family},
    {"bilinear_suite", 300.0, check_bilinear_suite},
    {"contraction_fixed_point", 0.0, check_contraction_fixed_point},
    {"oracle_equivalence", 600.0, check_oracle_equivalence},
    {"lipschitz_dependence", 0.0, check_lipschitz_dependence},
    {"uniqueness_probe", 0.0, check_uniqueness_probe},
    {"exponent_table", 0.0, check_exponent_table},
};

CheckResult timed(const RegistryEntry& entry) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = entry.fn();
  } catch (const std::exception& e) {
    r.id = entry.id;
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (entry.time_limit > 0.0 && r.seconds > entry.time_limit) {
    r.pass = false;
    r.detail += " [over time budget " + num(entry.time_limit) + "s]";
  }
  return r;
}

}  // namespace

std::vector<std::string> check_ids() {
  std::vector<std::string> ids;
  for (const auto& e : kRegistry) ids.push_back(e.id);
  return ids;
}

CheckResult run_check(const std::string& id) {
  for (const auto& e : kRegistry)
    if (id == e.id) return timed(e);
  throw ConfigError("unknown check id: " + id);
}

std::vector<CheckResult> run_all() {
  std::vector<CheckResult> out;
  for (const auto& e : kRegistry) out.push_back(timed(e));
  return out;
}

}  // namespace kdvlab::verify
