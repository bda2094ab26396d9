#include <cmath>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "kdvlab/cutoff.hpp"
#include "kdvlab/errors.hpp"
#include "kdvlab/norms.hpp"
#include "kdvlab/partition.hpp"
#include "kdvlab/profiles.hpp"
#include "kdvlab/spectral.hpp"

using namespace kdvlab;
using testutil::from_modes;
using testutil::random_grid;

namespace {

SpaceTimeFunction linear_in_time(const GridFunction& u, std::size_t intervals) {
  SpaceTimeFunction st = st_constant(u, intervals, 0.0, 1.0);
  for (std::size_t i = 0; i < st.slices.size(); ++i)
    st.slices[i] = st.time(i) * st.slices[i];
  return st;
}

}  // namespace

TEST_CASE("partitions tile the grid and sum to one") {
  for (auto [n, L, l] : std::vector<std::tuple<std::size_t, double, int>>{
           {256, 32.0, 0}, {256, 32.0, 2}, {512, 16.0, 1}, {64, 8.0, 3}}) {
    auto part = get_partition(n, L, l);
    CHECK(part->unity_defect() < 1e-14);
    std::size_t covered = 0;
    for (std::size_t q = 0; q < part->cube_count(); ++q) {
      const auto& c = part->cube(q);
      CHECK(c.begin == covered);
      CHECK(c.end > c.begin);
      covered = c.end;
    }
    CHECK(covered == n);
  }
  // Scale at or above the domain length: a single trivial cube.
  auto triv = get_partition(256, 32.0, max_scale_exponent(32.0));
  CHECK(triv->trivial());
}

TEST_CASE("block norms collapse to plain norms on the trivial partition") {
  GridFunction u = random_grid(256, 32.0, 5);
  const int lmax = max_scale_exponent(u.domain_length);
  CHECK(l1_block_norm(u, lmax, BlockInner::L2) ==
        doctest::Approx(l2_norm(u)).epsilon(1e-13));
  CHECK(l1_block_norm(u, lmax, BlockInner::LInf) ==
        doctest::Approx(max_abs(u)).epsilon(1e-13));
}

TEST_CASE("block norms sit between the plain norm and the cube-count bound") {
  GridFunction u = random_grid(512, 32.0, 6);
  for (int l = 0; l <= max_scale_exponent(u.domain_length); ++l) {
    const double b = l1_block_norm(u, l, BlockInner::L2);
    const double cubes =
        static_cast<double>(get_partition(u.size(), u.domain_length, l)->cube_count());
    CHECK(b >= l2_norm(u) * (1.0 - 1e-12));
    CHECK(b <= std::sqrt(cubes) * l2_norm(u) * (1.0 + 1e-12));
    CHECK(l1_block_norm(u, l, BlockInner::LInf) >= max_abs(u) * (1.0 - 1e-12));
  }
}

TEST_CASE("graded norm of a single mode decomposes over the cutoffs") {
  // For u = e^{i xi x} every band projection is the scalar multiple
  // phi_j(xi) u, so the graded sum is computable from the block norms alone.
  const std::size_t n = 512;
  const double L = 32.0;
  const double s = 1.3;
  GridFunction u = from_modes(n, L, {{31, Complex(0.8, -0.4)}});
  const double xi = 2.0 * M_PI * 31.0 / L;
  const int jm = grid_j_max(u);
  double expect_sq = 0.0;
  for (int j = 0; j <= jm; ++j) {
    const double w = j == 0 ? cutoff::phi0(xi) : cutoff::phi_band(j, xi);
    if (w == 0.0) continue;
    const double block = l1_block_norm(u, 2 * j, BlockInner::L2);
    expect_sq += std::exp2(2.0 * s * j) * w * w * block * block;
  }
  CHECK(l1hs_norm(u, s) == doctest::Approx(std::sqrt(expect_sq)).epsilon(1e-12));

  double zy = 0.0;
  for (int j = 0; j <= jm; ++j) {
    const double w = j == 0 ? cutoff::phi0(xi) : cutoff::phi_band(j, xi);
    zy = std::max(zy, std::exp2(1.7 * j) * w * max_abs(u));
  }
  CHECK(zygmund_norm(u, 1.7) == doctest::Approx(zy).epsilon(1e-12));
}

TEST_CASE("graded norms are homogeneous and subadditive") {
  GridFunction u = random_smooth_profile(512, 32.0, 1.5, 8);
  GridFunction v = random_smooth_profile(512, 32.0, 1.0, 9);
  const double s = 1.1;
  CHECK(l1hs_norm(3.5 * u, s) == doctest::Approx(3.5 * l1hs_norm(u, s)).epsilon(1e-12));
  CHECK(zygmund_norm(3.5 * u, 2.0) ==
        doctest::Approx(3.5 * zygmund_norm(u, 2.0)).epsilon(1e-12));
  CHECK(l1hs_norm(u + v, s) <= l1hs_norm(u, s) + l1hs_norm(v, s) + 1e-9);
  CHECK(zygmund_norm(u + v, 2.0) <=
        zygmund_norm(u, 2.0) + zygmund_norm(v, 2.0) + 1e-9);

  SpaceTimeFunction a = linear_in_time(u, 16), b = linear_in_time(v, 16);
  CHECK(l1xs_norm(2.0 * a, s) == doctest::Approx(2.0 * l1xs_norm(a, s)).epsilon(1e-12));
  CHECK(l1ys_norm(2.0 * a, s) == doctest::Approx(2.0 * l1ys_norm(a, s)).epsilon(1e-12));
  CHECK(l1xs_norm(a + b, s) <= l1xs_norm(a, s) + l1xs_norm(b, s) + 1e-9);
}

TEST_CASE("breakdown rows re-aggregate to the reported totals") {
  GridFunction u = random_smooth_profile(256, 32.0, 1.2, 10);
  const double s = 0.9;
  const NormBreakdown hb = l1hs_breakdown(u, s);
  const int jm = grid_j_max(u);
  std::vector<double> band_sum(static_cast<std::size_t>(jm) + 1, 0.0);
  for (const auto& row : hb.rows) band_sum[static_cast<std::size_t>(row.band)] += row.contribution;
  double total_sq = 0.0;
  for (int j = 0; j <= jm; ++j)
    total_sq += std::exp2(2.0 * s * j) * band_sum[static_cast<std::size_t>(j)] *
                band_sum[static_cast<std::size_t>(j)];
  CHECK(hb.total == doctest::Approx(std::sqrt(total_sq)).epsilon(1e-12));
  CHECK(hb.total == doctest::Approx(l1hs_norm(u, s)).epsilon(1e-12));

  SpaceTimeFunction st = linear_in_time(u, 16);
  CHECK(l1xs_breakdown(st, s).total == doctest::Approx(l1xs_norm(st, s)).epsilon(1e-12));
  CHECK(l1ys_breakdown(st, s).total == doctest::Approx(l1ys_norm(st, s)).epsilon(1e-12));
}

TEST_CASE("local-energy norm of hand-computable slabs") {
  const std::size_t n = 256;
  const double L = 32.0;
  GridFunction c(n, L);
  for (auto& v : c.samples) v = Complex(0.7, 0.0);

  // Constant in time and space: every cube at scale l contributes
  // 2^{-l/2} * 0.7 * 2^{l/2}, so the scan value is exactly 0.7.
  SpaceTimeFunction lift = st_constant(c, 16, 0.0, 1.0);
  CHECK(x_norm(lift) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(linfty_l2(lift) == doctest::Approx(0.7 * std::sqrt(L)).epsilon(1e-12));
  CHECK(l1t_l2(lift) == doctest::Approx(0.7 * std::sqrt(L)).epsilon(1e-12));

  // u(t) = t * c: the slice norm is linear in t, so the time trapezoid is
  // exact for L1 and the square integrates to 1/3 up to O(dt^2).
  SpaceTimeFunction ramp = linear_in_time(c, 64);
  CHECK(linfty_l2(ramp) == doctest::Approx(0.7 * std::sqrt(L)).epsilon(1e-12));
  CHECK(l1t_l2(ramp) == doctest::Approx(0.35 * std::sqrt(L)).epsilon(1e-12));
  CHECK(x_norm(ramp) == doctest::Approx(0.7 / std::sqrt(3.0)).epsilon(1e-4));
}

TEST_CASE("band-adapted norms compose their published pieces") {
  GridFunction u = random_smooth_profile(256, 32.0, 1.0, 11);
  SpaceTimeFunction st = linear_in_time(u, 16);
  for (int j = 1; j <= 3; ++j) {
    CHECK(xj_norm(st, j) ==
          doctest::Approx(std::exp2(j) * x_norm(st) + linfty_l2(st)).epsilon(1e-12));
  }
}

TEST_CASE("forcing surrogate is the minimum of its branches") {
  GridFunction u = random_smooth_profile(256, 32.0, 1.0, 12);
  SpaceTimeFunction f = linear_in_time(u, 16);
  for (int j = 1; j <= 3; ++j) {
    const double y = yj_surrogate(f, j);
    CHECK(y >= yj_lower_bound(f, j) * (1.0 - 1e-12));
    double best = l1t_l2(f);
    for (int l = 0; l <= max_scale_exponent(f.slices[0].domain_length); ++l) {
      const double b = yj_branch_single_scale(f, j, l);
      CHECK(y <= b * (1.0 + 1e-12));
      best = std::min(best, b);
    }
    CHECK(y == doctest::Approx(best).epsilon(1e-12));
    CHECK(yj_surrogate(3.0 * f, j) == doctest::Approx(3.0 * y).epsilon(1e-12));
  }
}

TEST_CASE("graded norms reject data beyond the frequency budget") {
  GridFunction bad = from_modes(512, 32.0, {{204, Complex(1.0, 0.0)}});
  CHECK_THROWS_AS(l1hs_norm(bad, 1.0), BudgetError);
}
