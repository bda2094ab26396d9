#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "kdvlab/cutoff.hpp"
#include "kdvlab/errors.hpp"
#include "kdvlab/profiles.hpp"
#include "kdvlab/spectral.hpp"

using namespace kdvlab;
using testutil::from_modes;
using testutil::Mode;
using testutil::random_grid;
using testutil::rel_diff;

TEST_CASE("analysis recovers directly summed mode amplitudes") {
  const std::size_t n = 64;
  const double L = 16.0;
  const std::vector<Mode> modes{{1, Complex(0.7, 0.2)},
                                {-3, Complex(0.1, -0.4)},
                                {5, Complex(0.0, -0.3)},
                                {32, Complex(0.1, 0.0)}};  // Nyquist slot
  GridFunction u = from_modes(n, L, modes);
  Spectrum sp = analyze(u);
  for (std::size_t slot = 0; slot < n; ++slot) {
    Complex expect(0.0, 0.0);
    for (const auto& m : modes)
      if (sp.freq_index(slot) == m.n) expect += m.amp;
    CHECK(std::abs(sp.amp[slot] - expect) < 1e-13);
  }
  CHECK(rel_diff(synthesize(sp), u) < 1e-13);
}

TEST_CASE("round trip and Parseval on random data") {
  GridFunction u = random_grid(256, 32.0, 101);
  Spectrum sp = analyze(u);
  CHECK(rel_diff(synthesize(sp), u) < 1e-12);

  double phys = 0.0;
  for (const auto& v : u.samples) phys += std::norm(v);
  phys *= u.spacing();
  double spec = 0.0;
  for (const auto& c : sp.amp) spec += std::norm(c);
  spec *= u.domain_length;
  CHECK(phys == doctest::Approx(spec).epsilon(1e-12));
}

TEST_CASE("spectral derivative matches closed-form mode derivatives") {
  const std::size_t n = 128;
  const double L = 16.0;
  std::vector<Mode> modes{{2, Complex(0.5, 0.1)}, {-2, Complex(0.5, -0.1)},
                          {7, Complex(-0.2, 0.3)}, {-7, Complex(-0.2, -0.3)}};
  GridFunction u = from_modes(n, L, modes);
  for (int r = 1; r <= 3; ++r) {
    GridFunction expect =
        from_modes(n, L, testutil::differentiate_modes(modes, L, r));
    CHECK(rel_diff(spectral_derivative(u, r), expect) < 1e-12);
  }
  CHECK_THROWS_AS(spectral_derivative(u, 4), ConfigError);
}

TEST_CASE("spectral derivative agrees with a finite-difference stencil") {
  // Fourth-order central differences on a smooth bump: an approximation by a
  // completely different route, accurate to O(h^4).
  const std::size_t n = 512;
  const double L = 32.0;
  GridFunction u = gaussian_profile(n, L, 1.0, 2.0);
  GridFunction du = spectral_derivative(u, 1);
  const double h = u.spacing();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto at = [&](std::ptrdiff_t off) {
      std::ptrdiff_t idx =
          (static_cast<std::ptrdiff_t>(i) + off) % static_cast<std::ptrdiff_t>(n);
      if (idx < 0) idx += static_cast<std::ptrdiff_t>(n);
      return u.samples[static_cast<std::size_t>(idx)];
    };
    Complex fd = (8.0 * (at(1) - at(-1)) - (at(2) - at(-2))) / (12.0 * h);
    worst = std::max(worst, std::abs(fd - du.samples[i]));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("dyadic bands have exact spectral support") {
  const std::size_t n = 512;
  const double L = 32.0;
  GridFunction u = random_smooth_profile(n, L, 1.0, 7);
  const int jm = grid_j_max(u);
  CHECK(jm == cutoff::j_max(n, L));
  CHECK(jm == 4);  // pi N / L = 16 pi, largest j with 2^{j+1} <= 16 pi

  Spectrum sp = analyze(u);
  for (int j = 1; j <= jm; ++j) {
    Spectrum bp = analyze(band_project(u, j));
    const double lo = std::exp2(j - 1), hi = std::exp2(j + 1);
    for (std::size_t slot = 0; slot < n; ++slot) {
      const double axi = std::abs(sp.xi(slot));
      if (axi <= lo || axi >= hi) {
        // Multiplier is exactly zero here; only synthesis round-trip dust
        // survives.
        CHECK(std::abs(bp.amp[slot]) < 1e-14);
      } else {
        Complex expect = cutoff::phi_band(j, sp.xi(slot)) * sp.amp[slot];
        CHECK(std::abs(bp.amp[slot] - expect) < 1e-13);
      }
    }
  }
  CHECK_THROWS_AS(band_project(u, jm + 1), ConfigError);
}

TEST_CASE("band sums telescope to the low-pass projections") {
  GridFunction u = random_grid(512, 32.0, 13);
  const int jm = grid_j_max(u);
  GridFunction acc = lowpass_project(u, 0);
  for (int J = 1; J <= jm; ++J) {
    acc = acc + band_project(u, J);
    CHECK(rel_diff(acc, lowpass_project(u, J)) < 1e-13);
  }
  // On |xi| <= 2^{j_max} the multipliers resum to exactly 1.
  Spectrum sp = analyze(u);
  const double budget = cutoff::budget_frequency(u.size(), u.domain_length);
  for (std::size_t slot = 0; slot < u.size(); ++slot) {
    const double xi = sp.xi(slot);
    if (std::abs(xi) > budget) continue;
    double total = cutoff::phi0(xi);
    for (int j = 1; j <= jm; ++j) total += cutoff::phi_band(j, xi);
    CHECK(std::abs(total - 1.0) < 1e-15);
  }
}

TEST_CASE("non-adjacent band projections annihilate") {
  GridFunction u = random_grid(512, 32.0, 19);
  for (auto [i, j] : std::vector<std::pair<int, int>>{
           {0, 2}, {1, 3}, {2, 4}, {1, 4}, {0, 3}}) {
    GridFunction w = (i == 0) ? lowpass_project(u, 0) : band_project(u, i);
    GridFunction z = band_project(w, j);
    CHECK(max_abs(z) < 1e-13 * max_abs(u));
  }
}

TEST_CASE("third-derivative flow: phase, unitarity, group law") {
  const std::size_t n = 128;
  const double L = 16.0;
  const long mode = 5;
  const double xi = 2.0 * M_PI * static_cast<double>(mode) / L;
  GridFunction u = from_modes(n, L, {{mode, Complex(1.0, 0.0)}});
  const double t = 0.37;
  GridFunction ut = airy_propagate(u, t);
  GridFunction expect =
      from_modes(n, L, {{mode, std::exp(Complex(0.0, t * xi * xi * xi))}});
  CHECK(rel_diff(ut, expect) < 1e-13);

  GridFunction r = random_grid(n, L, 23);
  CHECK(l2_norm(airy_propagate(r, 0.8)) ==
        doctest::Approx(l2_norm(r)).epsilon(1e-12));
  CHECK(rel_diff(airy_propagate(airy_propagate(r, 0.3), 0.5),
                 airy_propagate(r, 0.8)) < 1e-12);
}

TEST_CASE("constant-coefficient flow applies the full symbol") {
  const std::size_t n = 128;
  const double L = 16.0;
  const long mode = 3;
  const double xi = 2.0 * M_PI * static_cast<double>(mode) / L;
  // Keep Re(abar) <= 0: a growing mean amplifies round-trip dust at the top
  // of the band by e^{Re(abar) t xi_max^2}, drowning a 1e-13 comparison.
  const Complex abar(-0.05, -0.02);
  const double t = 0.4;
  GridFunction u = from_modes(n, L, {{mode, Complex(0.4, 0.6)}});
  Complex factor = std::exp(t * (Complex(0.0, xi * xi * xi) + abar * xi * xi));
  GridFunction expect = from_modes(n, L, {{mode, Complex(0.4, 0.6) * factor}});
  CHECK(rel_diff(flow_propagate(u, t, abar), expect) < 1e-13);

  // Growth guard: a large positive real part at the top frequency overflows.
  CHECK_THROWS_AS(flow_propagate(random_grid(n, L, 3), 1e6, Complex(1.0, 0.0)),
                  BudgetError);
}

TEST_CASE("antiderivative integrates from the origin") {
  const std::size_t n = 256;
  const double L = 16.0;
  const double xi = 2.0 * M_PI / L;
  // u = cos(xi x): P = sin(xi x)/xi, P(0) = 0.
  GridFunction u = from_modes(n, L, testutil::real_pair(1, Complex(0.5, 0.0)));
  GridFunction p = antiderivative_from_zero(u);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    worst = std::max(worst, std::abs(p.samples[i] - std::sin(xi * u.x(i)) / xi));
  CHECK(worst < 1e-13);

  GridFunction r = random_grid(n, L, 31);
  GridFunction pr = antiderivative_from_zero(r);
  CHECK(std::abs(pr.samples[n / 2]) < 1e-12);  // x(N/2) = 0
  GridFunction back = spectral_derivative(pr, 1);
  GridFunction centered = r;
  const Complex mean = mean_value(r);
  for (auto& v : centered.samples) v -= mean;
  CHECK(rel_diff(back, centered) < 1e-11);
}

TEST_CASE("grid refinement copies coefficients exactly") {
  const std::size_t n = 64;
  const double L = 16.0;
  GridFunction u = random_smooth_profile(n, L, 2.0, 41);
  GridFunction fine = refine_grid(u, 4);
  CHECK(fine.size() == 4 * n);
  CHECK(fine.domain_length == L);
  // Original samples sit at every fourth point of the refined grid.
  for (std::size_t i = 0; i < n; ++i)
    CHECK(std::abs(fine.samples[4 * i] - u.samples[i]) < 1e-13);
  Spectrum cs = analyze(u), fs = analyze(fine);
  for (std::size_t slot = 0; slot < n; ++slot) {
    long f = cs.freq_index(slot);
    std::size_t fslot = f >= 0 ? static_cast<std::size_t>(f)
                               : fine.size() - static_cast<std::size_t>(-f);
    CHECK(std::abs(fs.amp[fslot] - cs.amp[slot]) < 1e-14);
  }
  CHECK_THROWS_AS(refine_grid(u, 3), ConfigError);
}

TEST_CASE("frequency budget gates mass above the resummed range") {
  const std::size_t n = 512;
  const double L = 32.0;
  GridFunction ok = from_modes(n, L, {{20, Complex(1.0, 0.0)}});  // xi ~ 3.9
  CHECK(budget_overflow_fraction(ok) < 1e-12);
  require_within_budget(ok);

  // xi = 2 pi 204 / 32 ~ 40 > 2^{j_max} = 16.
  GridFunction bad = from_modes(n, L, {{204, Complex(1.0, 0.0)}});
  CHECK(budget_overflow_fraction(bad) > 0.9);
  CHECK_THROWS_AS(require_within_budget(bad), BudgetError);
}
