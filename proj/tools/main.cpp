// Command-line driver: wires the config schema to the library pipeline and
// writes plot-ready CSV/JSON artifacts plus a run manifest into the output
// directory.  Exit codes: 0 ok, 1 internal/verification failure, 2 config,
// 3 non-contractive linear stage, 4 fixed point did not converge, 5 budget.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kdvlab/coefficients.hpp"
#include "kdvlab/config.hpp"
#include "kdvlab/errors.hpp"
#include "kdvlab/io.hpp"
#include "kdvlab/linear_solver.hpp"
#include "kdvlab/nonlinear_solver.hpp"
#include "kdvlab/nonlinearity.hpp"
#include "kdvlab/norms.hpp"
#include "kdvlab/oracle.hpp"
#include "kdvlab/rescaling.hpp"
#include "kdvlab/spectral.hpp"
#include "kdvlab/verify.hpp"

namespace {

using namespace kdvlab;
using nlohmann::json;

struct Options {
  std::string config_path;
  std::string out_override;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 1;
};

struct Run {
  RunConfig rc;
  std::string config_path;
  std::string raw_config;
  int threads = 1;
  std::vector<std::pair<std::string, std::string>> artifacts;  // path, hash
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  std::string path(const std::string& name) const {
    return rc.out_dir + "/" + name;
  }
  void save_text(const std::string& name, const std::string& text) {
    io::write_text(path(name), text);
    artifacts.emplace_back(path(name), io::hash_hex(io::fnv1a64(text)));
  }
  void note(const std::string& full_path) {
    artifacts.emplace_back(full_path, io::hash_hex(io::hash_file(full_path)));
  }
};

int env_threads(int fallback) {
  const char* v = std::getenv("KDVLAB_THREADS");
  if (!v) return fallback;
  int n = std::atoi(v);
  if (n < 1) throw ConfigError("KDVLAB_THREADS must be a positive integer");
  return n;
}

Run load_run(const Options& o) {
  if (o.config_path.empty())
    throw ConfigError("a configuration file is required (--config <path>)");
  Run run;
  run.raw_config = io::read_text(o.config_path);
  run.rc = parse_config_text(run.raw_config, o.config_path);
  run.config_path = o.config_path;
  if (o.seed_given) run.rc.seed = o.seed;
  if (!o.out_override.empty()) run.rc.out_dir = o.out_override;
  run.threads = o.threads;
  io::ensure_directory(run.rc.out_dir);
  return run;
}

void write_manifest(Run& run, const std::string& subcommand) {
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    run.start)
          .count();
  json m;
  m["subcommand"] = subcommand;
  if (!run.raw_config.empty()) {
    m["config_path"] = run.config_path;
    m["config_hash"] = io::hash_hex(io::fnv1a64(run.raw_config));
    m["config"] = json::parse(run.rc.echo);
    m["seed"] = run.rc.seed;
  }
  m["threads"] = run.threads;
  m["wall_seconds"] = secs;
  json arts = json::array();
  for (const auto& [p, h] : run.artifacts)
    arts.push_back(json{{"path", p}, {"hash", h}});
  m["artifacts"] = arts;
  io::write_text(run.path("manifest.json"), m.dump(2) + "\n");
}

// Scale index the full pipeline would use for this configuration.
int resolve_scale(const RunConfig& rc, const GridFunction& u0) {
  if (rc.solver.k >= 0) return rc.solver.k;
  const double data_norm = l1hs_norm(u0, rc.solver.s);
  const double delta1 = measure_delta1(rc.equation, u0, rc.solver.s);
  const double sigma = rc.solver.sigma > 0 ? rc.solver.sigma : delta1 / 2;
  return choose_scale(u0, rc.equation, rc.solver, sigma, data_norm);
}

std::vector<std::pair<double, double>> l2_trace(const SpaceTimeFunction& u) {
  std::vector<std::pair<double, double>> rows;
  rows.reserve(u.slices.size());
  for (std::size_t i = 0; i < u.slices.size(); ++i)
    rows.emplace_back(u.time(i), l2_norm(u.slices[i]));
  return rows;
}

int run_norm(Run& run) {
  const RunConfig& rc = run.rc;
  const double s = rc.solver.s;
  GridFunction u0 = make_initial_data(rc);

  io::write_grid_csv(run.path("profile.csv"), u0);
  run.note(run.path("profile.csv"));

  const NormBreakdown hb = l1hs_breakdown(u0, s);
  io::write_breakdown_csv(run.path("graded_h_breakdown.csv"), hb);
  run.note(run.path("graded_h_breakdown.csv"));
  run.save_text("graded_h_breakdown.json", io::breakdown_json(hb));

  // Space-time norms are reported on the constant-in-time lift of the data.
  const SpaceTimeFunction lift =
      st_constant(u0, rc.solver.time_intervals, 0.0, 1.0);
  const NormBreakdown xb = l1xs_breakdown(lift, s);
  const NormBreakdown yb = l1ys_breakdown(lift, s);
  io::write_breakdown_csv(run.path("graded_x_breakdown.csv"), xb);
  run.note(run.path("graded_x_breakdown.csv"));
  run.save_text("graded_x_breakdown.json", io::breakdown_json(xb));
  io::write_breakdown_csv(run.path("graded_y_breakdown.csv"), yb);
  run.note(run.path("graded_y_breakdown.csv"));
  run.save_text("graded_y_breakdown.json", io::breakdown_json(yb));

  json n;
  n["s"] = s;
  n["l2"] = l2_norm(u0);
  n["max_abs"] = max_abs(u0);
  n["graded_h"] = hb.total;
  n["zygmund_gamma_1"] = zygmund_norm(u0, 1.0);
  n["x_norm_lift"] = x_norm(lift);
  n["graded_x_lift"] = xb.total;
  n["graded_y_lift"] = yb.total;
  run.save_text("norms.json", n.dump(2) + "\n");

  std::printf("graded H(%g) = %.6g   zygmund(1) = %.6g   L2 = %.6g\n", s,
              hb.total, zygmund_norm(u0, 1.0), l2_norm(u0));
  return 0;
}

int run_scale_report(Run& run) {
  const RunConfig& rc = run.rc;
  const double s = rc.solver.s;
  GridFunction u0 = make_initial_data(rc);

  const Rational lam = lambda_exponent(rc.equation);
  const Rational sg = sigma0(rc.equation);
  const Rational sfloor = s0(rc.equation);
  json ex;
  ex["lambda"] = lam.str();
  ex["sigma0"] = sg.str();
  ex["s0"] = sfloor.str();
  ex["lambda_value"] = lam.value();
  ex["sigma0_value"] = sg.value();
  ex["s0_value"] = sfloor.value();
  run.save_text("exponents.json", ex.dump(2) + "\n");

  const SlopeTable rates =
      verify_scaling_rates(u0, s, rc.equation, {1, 2, 3, 4, 5});
  io::write_slope_csv(run.path("data_rates.csv"), rates);
  run.note(run.path("data_rates.csv"));
  run.save_text("data_rates.json", io::slope_json(rates));

  const SlopeTable coeff =
      verify_coefficient_bounds(rc.equation, u0, s, s + 1.0, {1, 2, 3, 4});
  io::write_slope_csv(run.path("coefficient_rates.csv"), coeff);
  run.note(run.path("coefficient_rates.csv"));
  run.save_text("coefficient_rates.json", io::slope_json(coeff));

  std::printf("lambda = %s   sigma0 = %s   s0 = %s\n", lam.str().c_str(),
              sg.str().c_str(), sfloor.str().c_str());
  for (const SlopeTable* t : {&rates, &coeff})
    for (const auto& e : t->entries)
      std::printf("  %-18s slope %+0.4f  bound %+0.4f  %s\n",
                  e.estimate_id.c_str(), e.fitted_slope, e.bound,
                  e.skipped ? "skip" : (e.pass ? "pass" : "FAIL"));
  const bool ok = rates.all_pass() && coeff.all_pass();
  std::printf("scale report: %s\n", ok ? "all rates within bounds" : "FAIL");
  return ok ? 0 : 1;
}

int run_solve_linear(Run& run) {
  const RunConfig& rc = run.rc;
  const double s = rc.solver.s;
  GridFunction u0 = make_initial_data(rc);

  const double data_norm = l1hs_norm(u0, s);
  const double delta1 = measure_delta1(rc.equation, u0, s);
  const double sigma = rc.solver.sigma > 0 ? rc.solver.sigma : delta1 / 2;
  const int k = resolve_scale(rc, u0);

  const RescaledData data =
      prepare_rescaled_data(u0, k, lambda_exponent(rc.equation));
  const FrozenCoefficients coeffs = assemble(rc.equation, data);
  io::write_coefficients(run.path("coefficients"), coeffs);
  run.note(run.path("coefficients") + "/coefficients.json");

  const SpaceTimeFunction f =
      st_constant(coeffs.r, rc.solver.time_intervals, 0.0, 1.0);
  auto [v, rep] = iterate_linear_solve(coeffs.a, data.high, f, s,
                                       rc.solver.linear_max_iter,
                                       rc.solver.linear_tol);

  io::write_spacetime_binary(run.path("solution_v.stbin"), v);
  run.note(run.path("solution_v.stbin"));
  std::vector<std::pair<double, double>> rows;
  for (std::size_t i = 0; i < rep.residual_norms.size(); ++i)
    rows.emplace_back(double(i), rep.residual_norms[i]);
  io::write_series_csv(run.path("defect_norms.csv"), "iteration", "defect",
                       rows);
  run.note(run.path("defect_norms.csv"));

  json r = json::parse(io::linear_report_json(rep));
  r["k"] = k;
  r["sigma"] = sigma;
  r["delta1"] = delta1;
  r["data_norm"] = data_norm;
  r["mizohata"] = mizohata_diagnostic(coeffs.a);
  run.save_text("linear_report.json", r.dump(2) + "\n");

  std::printf("linear stage: k=%d  iterations=%d  converged=%s\n", k,
              rep.iterations, rep.converged ? "yes" : "no");
  return 0;
}

int run_solve(Run& run) {
  const RunConfig& rc = run.rc;
  GridFunction u0 = make_initial_data(rc);
  auto [u, rep] = solve_cauchy(u0, rc.equation, rc.solver);

  run.save_text("solve_report.json", io::solve_report_json(rep));
  io::write_spacetime_binary(run.path("solution.stbin"), u);
  run.note(run.path("solution.stbin"));
  io::write_grid_csv(run.path("final_state.csv"), u.slices.back());
  run.note(run.path("final_state.csv"));
  io::write_series_csv(run.path("l2_vs_time.csv"), "t", "l2", l2_trace(u));
  run.note(run.path("l2_vs_time.csv"));
  std::vector<std::pair<double, double>> pd;
  for (std::size_t i = 0; i < rep.picard_diffs.size(); ++i)
    pd.emplace_back(double(i + 1), rep.picard_diffs[i]);
  io::write_series_csv(run.path("picard_diffs.csv"), "iteration",
                       "difference", pd);
  run.note(run.path("picard_diffs.csv"));

  std::printf(
      "solve: k=%d  T=%.6g  picard steps=%zu  residual=%.3g  defect=%.3g\n",
      rep.k, rep.t_end, rep.picard_diffs.size(), rep.fixed_point_residual,
      rep.pde_residual_max);
  return 0;
}

int run_oracle(Run& run) {
  const RunConfig& rc = run.rc;
  GridFunction u0 = make_initial_data(rc);
  const int k = resolve_scale(rc, u0);
  const double t_end = std::exp2(-3.0 * k);

  const SpaceTimeFunction u = oracle_solve(u0, rc.equation, t_end, rc.oracle);
  io::write_spacetime_binary(run.path("oracle.stbin"), u);
  run.note(run.path("oracle.stbin"));
  io::write_series_csv(run.path("oracle_l2_vs_time.csv"), "t", "l2",
                       l2_trace(u));
  run.note(run.path("oracle_l2_vs_time.csv"));
  io::write_grid_csv(run.path("oracle_final_state.csv"), u.slices.back());
  run.note(run.path("oracle_final_state.csv"));

  json r;
  r["k"] = k;
  r["t_end"] = t_end;
  r["output_intervals"] = rc.oracle.output_intervals;
  r["substeps_per_unit"] = rc.oracle.substeps_per_unit;
  r["scheme"] = rc.oracle.scheme;
  r["final_l2"] = l2_norm(u.slices.back());
  run.save_text("oracle_report.json", r.dump(2) + "\n");

  std::printf("oracle: T=%.6g  slices=%zu  final L2=%.6g\n", t_end,
              u.slices.size(), l2_norm(u.slices.back()));
  return 0;
}

int run_compare(Run& run) {
  const RunConfig& rc = run.rc;
  GridFunction u0 = make_initial_data(rc);
  auto [up, rep] = solve_cauchy(u0, rc.equation, rc.solver);

  OracleConfig oc = rc.oracle;
  oc.output_intervals = rep.time_intervals;
  const SpaceTimeFunction uo = oracle_solve(u0, rc.equation, rep.t_end, oc);

  const std::size_t n = std::min(up.slices.size(), uo.slices.size());
  std::vector<std::pair<double, double>> rows;
  double max_err = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = l2_norm(up.slices[i] - uo.slices[i]);
    max_err = std::max(max_err, e);
    rows.emplace_back(up.time(i), e);
  }
  io::write_series_csv(run.path("error_vs_time.csv"), "t", "l2_error", rows);
  run.note(run.path("error_vs_time.csv"));
  io::write_spacetime_binary(run.path("solution.stbin"), up);
  run.note(run.path("solution.stbin"));
  io::write_spacetime_binary(run.path("oracle.stbin"), uo);
  run.note(run.path("oracle.stbin"));

  json r;
  r["k"] = rep.k;
  r["t_end"] = rep.t_end;
  r["max_l2_error"] = max_err;
  r["pipeline_defect"] = rep.pde_residual_max;
  run.save_text("compare.json", r.dump(2) + "\n");

  std::printf("compare: T=%.6g  max L2 difference=%.6g\n", rep.t_end,
              max_err);
  return 0;
}

int run_verify(Run& run, const std::vector<std::string>& only, bool list) {
  if (list) {
    for (const auto& id : verify::check_ids()) std::printf("%s\n", id.c_str());
    return 0;
  }
  const std::vector<std::string> ids =
      only.empty() ? verify::check_ids() : only;
  json checks = json::array();
  int failed = 0;
  for (const auto& id : ids) {
    const verify::CheckResult r = verify::run_check(id);
    if (!r.pass) ++failed;
    std::printf("[%s] %-24s (%.1fs) %s\n", r.pass ? "PASS" : "FAIL",
                r.id.c_str(), r.seconds, r.detail.c_str());
    std::fflush(stdout);
    checks.push_back(json{{"id", r.id},
                          {"pass", r.pass},
                          {"seconds", r.seconds},
                          {"detail", r.detail}});
  }
  json rep;
  rep["checks"] = checks;
  rep["total"] = ids.size();
  rep["failed"] = failed;
  run.save_text("verify_report.json", rep.dump(2) + "\n");
  std::printf("verify: %zu checks, %d failed\n", ids.size(), failed);
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "numerical laboratory for the periodic third-order dispersive Cauchy "
      "problem"};
  app.require_subcommand(1);

  Options o;
  app.add_option("--config", o.config_path, "configuration file (JSON)");
  app.add_option("--out", o.out_override, "output directory override");
  auto* seed_opt =
      app.add_option("--seed", o.seed, "override the data seed");
  auto* threads_opt =
      app.add_option("--threads", o.threads, "worker thread count")
          ->check(CLI::PositiveNumber);

  auto* c_norm = app.add_subcommand(
      "norm", "evaluate the graded norms of the configured data profile");
  auto* c_scale = app.add_subcommand(
      "scale-report", "exponent table and rescaling decay-rate fits");
  auto* c_lin = app.add_subcommand(
      "solve-linear", "assemble coefficients and run the linear stage once");
  auto* c_solve =
      app.add_subcommand("solve", "run the full fixed-point pipeline");
  auto* c_oracle = app.add_subcommand(
      "oracle", "integrate the same problem with the reference scheme");
  auto* c_cmp = app.add_subcommand(
      "compare", "pipeline vs. reference scheme, error trace over time");
  auto* c_ver = app.add_subcommand(
      "verify", "run the built-in property and acceptance checks");
  std::vector<std::string> only;
  bool list_checks = false;
  c_ver->add_option("--only", only, "run only the named checks");
  c_ver->add_flag("--list", list_checks, "list check ids and exit");
  for (auto* sub : {c_norm, c_scale, c_lin, c_solve, c_oracle, c_cmp, c_ver})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    o.seed_given = seed_opt->count() > 0;
    if (threads_opt->count() == 0) o.threads = env_threads(o.threads);

    if (app.got_subcommand(c_ver)) {
      Run run;
      if (!o.config_path.empty()) run = load_run(o);
      if (!o.out_override.empty()) run.rc.out_dir = o.out_override;
      run.threads = o.threads;
      io::ensure_directory(run.rc.out_dir);
      const int rcode = run_verify(run, only, list_checks);
      write_manifest(run, "verify");
      return rcode;
    }

    Run run = load_run(o);
    int rcode = 0;
    std::string name;
    if (app.got_subcommand(c_norm)) {
      name = "norm";
      rcode = run_norm(run);
    } else if (app.got_subcommand(c_scale)) {
      name = "scale-report";
      rcode = run_scale_report(run);
    } else if (app.got_subcommand(c_lin)) {
      name = "solve-linear";
      rcode = run_solve_linear(run);
    } else if (app.got_subcommand(c_solve)) {
      name = "solve";
      rcode = run_solve(run);
    } else if (app.got_subcommand(c_oracle)) {
      name = "oracle";
      rcode = run_oracle(run);
    } else if (app.got_subcommand(c_cmp)) {
      name = "compare";
      rcode = run_compare(run);
    }
    write_manifest(run, name);
    return rcode;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
