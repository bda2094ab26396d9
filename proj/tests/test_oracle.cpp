#include <cmath>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "kdvlab/errors.hpp"
#include "kdvlab/nonlinearity.hpp"
#include "kdvlab/oracle.hpp"
#include "kdvlab/profiles.hpp"
#include "kdvlab/spectral.hpp"

using namespace kdvlab;
using testutil::rel_diff;

namespace {

Nonlinearity transport() {
  Nonlinearity f;
  f.terms = {{Complex(-6.0, 0.0), {1, 1, 0}}};
  return f;
}

double final_error(const SpaceTimeFunction& a, const SpaceTimeFunction& b) {
  return l2_norm(a.slices.back() - b.slices.back());
}

}  // namespace

TEST_CASE("stability estimate matches the hand-expanded formula") {
  GridFunction u = gaussian_profile(256, 16.0, 1.3, 1.0);
  const double ximax = M_PI * 256.0 / 16.0;
  const double m0 = max_abs(u);
  const double m1 = max_abs(spectral_derivative(u, 1));
  const double m2 = max_abs(spectral_derivative(u, 2));

  Nonlinearity sq;
  sq.terms = {{Complex(1.0, 0.0), {2, 0, 0}}};
  CHECK(stability_rate(sq, u) == doctest::Approx(2.0 * m0).epsilon(1e-12));

  Nonlinearity uuxx;
  uuxx.terms = {{Complex(2.5, 0.0), {1, 0, 1}}};
  CHECK(stability_rate(uuxx, u) ==
        doctest::Approx(2.5 * (m2 + ximax * ximax * m0)).epsilon(1e-12));

  Nonlinearity kdv = transport();
  CHECK(stability_rate(kdv, u) ==
        doctest::Approx(6.0 * (m1 + ximax * m0)).epsilon(1e-12));
}

TEST_CASE("with the nonlinearity switched off the flow is exact") {
  GridFunction u0 = random_smooth_profile(128, 16.0, 2.0, 81);
  Nonlinearity off;
  off.terms = {{Complex(0.0, 0.0), {2, 0, 0}}};
  OracleConfig cfg;
  cfg.output_intervals = 8;
  SpaceTimeFunction u = oracle_solve(u0, off, 0.5, cfg);
  REQUIRE(u.slices.size() == 9);
  for (std::size_t i = 0; i < u.slices.size(); ++i)
    CHECK(rel_diff(u.slices[i], airy_propagate(u0, u.time(i))) < 1e-12);
}

TEST_CASE("step refinement converges at the scheme's design order") {
  GridFunction u0 = gaussian_profile(256, 16.0, 1.5, 1.0);
  Nonlinearity f = transport();
  const double T = 0.5;

  OracleConfig fine;
  fine.substeps_per_unit = 4096;
  fine.output_intervals = 8;
  SpaceTimeFunction ref = oracle_solve(u0, f, T, fine);

  std::vector<double> errs;
  for (int sub : {256, 512, 1024}) {
    OracleConfig cfg;
    cfg.substeps_per_unit = sub;
    cfg.output_intervals = 8;
    errs.push_back(final_error(oracle_solve(u0, f, T, cfg), ref));
  }
  CHECK(errs[0] > errs[1]);
  CHECK(errs[1] > errs[2]);
  const double order = std::log2(errs[0] / errs[1]);
  CHECK(order > 3.5);
}

TEST_CASE("transport invariants are conserved") {
  GridFunction u0 = gaussian_profile(256, 16.0, 1.0, 1.0);
  OracleConfig cfg;
  cfg.output_intervals = 16;
  SpaceTimeFunction u = oracle_solve(u0, transport(), 0.5, cfg);

  const Complex mass0 = mean_value(u.slices.front());
  const double momentum0 = l2_norm(u.slices.front());
  for (const auto& slice : u.slices) {
    CHECK(std::abs(mean_value(slice) - mass0) < 1e-10);
    CHECK(l2_norm(slice) == doctest::Approx(momentum0).epsilon(1e-6));
  }
}

TEST_CASE("a travelling wave tracks its analytic trajectory") {
  const std::size_t n = 512;
  const double L = 32.0;
  // Speed 4 keeps the seam tail of the periodized sech^2 below the
  // frequency-budget gate; slower solitons are too wide for this domain.
  const double speed = 4.0;
  GridFunction u0 = soliton_profile(n, L, speed);
  OracleConfig cfg;
  cfg.output_intervals = 8;
  cfg.substeps_per_unit = 1024;
  SpaceTimeFunction u = oracle_solve(u0, transport(), 0.5, cfg);
  for (std::size_t i = 0; i < u.slices.size(); ++i) {
    GridFunction expect = soliton_at_time(n, L, speed, 0.0, u.time(i));
    CHECK(l2_norm(u.slices[i] - expect) < 1e-4);
  }
}

TEST_CASE("runaway growth aborts with a budget failure") {
  // Constant-in-space data under F = u^2 is the Riccati blow-up
  // u(t) = u0/(1 - u0 t); inside the blow-up window one substep must
  // eventually grow past the tenfold guard.
  GridFunction u0(64, 8.0);
  for (auto& v : u0.samples) v = Complex(100.0, 0.0);
  Nonlinearity sq;
  sq.terms = {{Complex(1.0, 0.0), {2, 0, 0}}};
  OracleConfig cfg;
  cfg.output_intervals = 32;
  CHECK_THROWS_AS(oracle_solve(u0, sq, 0.02, cfg), BudgetError);
}

TEST_CASE("integrator settings are validated") {
  OracleConfig bad;
  bad.substeps_per_unit = 100;  // not a power of two
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.substeps_per_unit = 32;  // too coarse
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  OracleConfig ok;
  CHECK_NOTHROW(ok.validate());
}
