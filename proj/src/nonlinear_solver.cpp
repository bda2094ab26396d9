#include "kdvlab/nonlinear_solver.hpp"

#include <algorithm>
#include <cmath>

#include "kdvlab/norms.hpp"
#include "kdvlab/spectral.hpp"

namespace kdvlab {

namespace {

SpaceTimeFunction right_side(const FrozenCoefficients& coeffs,
                             const SpaceTimeFunction& v) {
  SpaceTimeFunction rhs = v;
  for (auto& s : rhs.slices) s = evaluate_right_side(coeffs, s);
  return rhs;
}

// Live space-time buffers held by a solve, for the memory guard.
constexpr std::size_t kMaxStSamples = std::size_t(1) << 22;

void require_st_budget(std::size_t n, int k, int intervals) {
  std::size_t total = (n << k) * static_cast<std::size_t>(intervals + 1);
  if (total > kMaxStSamples)
    throw BudgetError(
        "space-time storage at scale " + std::to_string(k) +
        " exceeds the memory budget (" + std::to_string(total) + " samples)");
}

}  // namespace

SpaceTimeFunction contraction_step(const SpaceTimeFunction& v,
                                   const FrozenCoefficients& coeffs,
                                   const GridFunction& v0,
                                   const SolverConfig& cfg,
                                   int* linear_iterations) {
  SpaceTimeFunction rhs = right_side(coeffs, v);
  auto [w, rep] = iterate_linear_solve(coeffs.a, v0, rhs, cfg.s,
                                       cfg.linear_max_iter, cfg.linear_tol);
  if (linear_iterations) *linear_iterations += rep.iterations;
  return w;
}

std::pair<SpaceTimeFunction, SolveReport> solve_fixed_point(
    const FrozenCoefficients& coeffs, const GridFunction& v0,
    const SolverConfig& cfg) {
  if (cfg.max_picard < 1) throw ConfigError("Picard budget must be positive");
  if (cfg.time_intervals < 4)
    throw ConfigError("need at least 4 time intervals");
  SolveReport report;
  report.k = coeffs.k;
  report.sigma = cfg.sigma;
  report.data_norm = cfg.data_norm;
  report.ball_radius = cfg.ball_radius;
  report.time_intervals = cfg.time_intervals;

  SpaceTimeFunction v = st_constant(
      v0, static_cast<std::size_t>(cfg.time_intervals), 0.0, 1.0);
  for (int n = 0; n < cfg.max_picard; ++n) {
    SpaceTimeFunction next = contraction_step(v, coeffs, v0, cfg,
                                              &report.total_linear_iterations);
    double diff = l1xs_norm(next - v, cfg.s);
    double size = l1xs_norm(next, cfg.s);
    report.picard_diffs.push_back(diff);
    report.iterate_norms.push_back(size);
    if (cfg.ball_radius > 0.0 && size > cfg.ball_radius)
      throw NoConvergenceError(
          "iterate escaped the contraction ball: " + std::to_string(size) +
          " > " + std::to_string(cfg.ball_radius));
    v = std::move(next);
    if (diff < cfg.tol) {
      report.converged = true;
      report.fixed_point_residual = diff;
      return {std::move(v), std::move(report)};
    }
  }
  throw NoConvergenceError("fixed-point iteration did not settle within " +
                           std::to_string(cfg.max_picard) + " steps");
}

double measure_delta1(const Nonlinearity& f, const GridFunction& u0,
                      double s) {
  bool has_second_order = false;
  for (const auto& t : f.terms)
    if (t.alpha[2] >= 1 && t.coefficient != Complex(0.0, 0.0))
      has_second_order = true;
  if (!has_second_order) return 1.0;

  SlopeTable table =
      verify_coefficient_bounds(f, u0, s, s + 1.0, {1, 2, 3, 4});
  double delta = 1.0;
  bool measured = false;
  for (const auto& e : table.entries) {
    if (e.estimate_id.rfind("da_", 0) != 0 || e.skipped) continue;
    delta = std::min(delta, -e.fitted_slope);
    measured = true;
  }
  if (!measured) return 1.0;
  return std::clamp(delta, 0.05, 1.0);
}

int choose_scale(const GridFunction& u0, const Nonlinearity& f,
                 const SolverConfig& cfg, double sigma, double data_norm) {
  if (data_norm == 0.0) return 0;
  double lambda = lambda_exponent(f).value();
  double gap = cfg.s - lambda - 2.0;
  int k = static_cast<int>(
      std::ceil(std::max(0.0, std::log2(std::max(data_norm, 1e-300)))));
  // Rescaling by k contracts frequencies by 2^k, so degree-m products of
  // admissible data stay inside the budget once 2^k >= m; below that the
  // Galerkin system is not closed and the norm gates reject the forcing.
  int fit = 0;
  while ((1 << fit) < f.max_order()) ++fit;
  k = std::max(k, fit);
  const double theta = 0.25;

  for (; k <= cfg.k_max; ++k) {
    require_st_budget(u0.size(), k, cfg.time_intervals);
    double ball = std::exp2(-sigma * k) * data_norm;
    double theory = std::exp2(-gap * k) * data_norm;
    if (theory > theta * ball) continue;
    RescaledData data = prepare_rescaled_data(u0, k, lambda_exponent(f));
    if (l1hs_norm(data.high, cfg.s) > theta * ball) continue;
    FrozenCoefficients coeffs = assemble(f, data);
    SpaceTimeFunction probe =
        st_constant(coeffs.r, static_cast<std::size_t>(cfg.time_intervals),
                    0.0, 1.0);
    try {
      iterate_linear_solve(coeffs.a, data.high, probe, cfg.s,
                           std::min(8, cfg.linear_max_iter), cfg.linear_tol);
    } catch (const NonContractiveError&) {
      continue;
    }
    return k;
  }
  throw BudgetError("no admissible scale up to k_max = " +
                    std::to_string(cfg.k_max));
}

double sup_t_l1hs(const SpaceTimeFunction& u, double s) {
  double best = 0.0;
  for (const auto& slice : u.slices) best = std::max(best, l1hs_norm(slice, s));
  return best;
}

double pde_residual_max(const SpaceTimeFunction& u, const Nonlinearity& f) {
  SpaceTimeFunction dt = time_derivative_probe(u);
  double worst = 0.0;
  for (std::size_t m = 0; m < u.slices.size(); ++m) {
    GridFunction res = dt.slices[m] + spectral_derivative(u.slices[m], 3) -
                       evaluate(f, u.slices[m]);
    worst = std::max(worst, l2_norm(res));
  }
  return worst;
}

std::pair<SpaceTimeFunction, SolveReport> solve_cauchy(const GridFunction& u0,
                                                       const Nonlinearity& f,
                                                       SolverConfig cfg) {
  f.validate();
  u0.validate();
  double s0v = s0(f).value();
  if (!(cfg.s > s0v))
    throw ConfigError("regularity index " + std::to_string(cfg.s) +
                      " does not exceed the equation's threshold " +
                      s0(f).str());
  require_within_budget(u0, 1e-6, "initial data");

  double data_norm = l1hs_norm(u0, cfg.s);
  double delta1 = cfg.sigma > 0.0 ? 2.0 * cfg.sigma
                                  : measure_delta1(f, u0, cfg.s);
  double sigma = cfg.sigma > 0.0 ? cfg.sigma : 0.5 * delta1;

  int k = cfg.k >= 0 ? cfg.k : choose_scale(u0, f, cfg, sigma, data_norm);
  require_st_budget(u0.size(), k, cfg.time_intervals);

  cfg.sigma = sigma;
  cfg.data_norm = data_norm;
  cfg.ball_radius = std::exp2(-sigma * k) * data_norm;

  RescaledData data = prepare_rescaled_data(u0, k, lambda_exponent(f));
  FrozenCoefficients coeffs = assemble(f, data);
  auto [v, report] = solve_fixed_point(coeffs, data.high, cfg);

  report.lambda = lambda_exponent(f).str();
  report.sigma0 = sigma0(f).str();
  report.s0 = s0(f).str();
  report.delta1 = delta1;

  SpaceTimeFunction rescaled = v;
  for (auto& slice : rescaled.slices) slice = slice + data.low;
  SpaceTimeFunction u = descale_solution(rescaled, k, data.lambda);
  report.t_end = u.t_end;
  report.pde_residual_max = pde_residual_max(u, f);
  return {std::move(u), std::move(report)};
}

LipschitzReport lipschitz_check(const GridFunction& u0_a,
                                const GridFunction& u0_b,
                                const Nonlinearity& f, SolverConfig cfg) {
  require_same_grid(u0_a, u0_b);
  LipschitzReport rep;
  rep.data_difference = l1hs_norm(u0_a - u0_b, cfg.s);
  if (rep.data_difference == 0.0) {
    rep.exact_match = true;
    rep.k = std::max(cfg.k, 0);
    return rep;
  }
  if (cfg.k < 0) {
    double data_norm = l1hs_norm(u0_a, cfg.s);
    double delta1 = cfg.sigma > 0.0 ? 2.0 * cfg.sigma
                                    : measure_delta1(f, u0_a, cfg.s);
    double sigma = cfg.sigma > 0.0 ? cfg.sigma : 0.5 * delta1;
    cfg.k = choose_scale(u0_a, f, cfg, sigma, data_norm);
  }
  rep.k = cfg.k;
  auto [ua, ra] = solve_cauchy(u0_a, f, cfg);
  auto [ub, rb] = solve_cauchy(u0_b, f, cfg);
  rep.solution_difference = sup_t_l1hs(ua - ub, cfg.s);
  rep.ratio = rep.solution_difference / rep.data_difference;
  return rep;
}

}  // namespace kdvlab
