#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "kdvlab/errors.hpp"
#include "kdvlab/nonlinearity.hpp"
#include "kdvlab/spectral.hpp"

using namespace kdvlab;
using testutil::from_modes;
using testutil::Mode;
using testutil::random_grid;
using testutil::rel_diff;

TEST_CASE("dealiased product equals the truncated convolution") {
  // Brute-force oracle in coefficient space: c_n = sum_{p+q=n} a_p b_q over
  // grid frequencies, keeping only n inside the original band.  No aliasing
  // term appears anywhere in this sum.
  const std::size_t n = 16;
  const double L = 8.0;
  GridFunction a = random_grid(n, L, 71);
  GridFunction b = random_grid(n, L, 72);
  Spectrum sa = analyze(a), sb = analyze(b);

  Spectrum expect;
  expect.amp.assign(n, Complex(0.0, 0.0));
  expect.domain_length = L;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const long f = sa.freq_index(i) + sb.freq_index(j);
      if (f <= -static_cast<long>(n) / 2 || f > static_cast<long>(n) / 2)
        continue;
      const std::size_t slot =
          f >= 0 ? static_cast<std::size_t>(f) : n - static_cast<std::size_t>(-f);
      expect.amp[slot] += sa.amp[i] * sb.amp[j];
    }

  CHECK(rel_diff(dealiased_product(a, b), synthesize(expect)) < 1e-13);
}

TEST_CASE("products of under-Nyquist data are exact") {
  // Both factors and their true product fit inside the band, so the plain
  // pointwise product is already alias-free and the two routes must agree.
  const std::size_t n = 64;
  const double L = 16.0;
  GridFunction a = from_modes(n, L, testutil::real_pair(2, Complex(0.4, 0.1)));
  GridFunction b = from_modes(n, L, testutil::real_pair(3, Complex(-0.2, 0.5)));
  CHECK(rel_diff(dealiased_product(a, b), pointwise(a, b)) < 1e-13);
}

TEST_CASE("polynomial evaluation matches the sampled closed form") {
  const std::size_t n = 64;
  const double L = 16.0;
  std::vector<Mode> modes{{1, Complex(0.20, 0.00)}, {-1, Complex(0.20, 0.00)},
                          {2, Complex(0.05, 0.10)}, {-2, Complex(0.05, -0.10)},
                          {3, Complex(0.00, -0.07)}, {-3, Complex(0.00, 0.07)}};
  GridFunction u = from_modes(n, L, modes);
  GridFunction ux = from_modes(n, L, testutil::differentiate_modes(modes, L, 1));
  GridFunction uxx = from_modes(n, L, testutil::differentiate_modes(modes, L, 2));

  Nonlinearity f;
  f.terms = {{Complex(2.0, 0.0), {2, 0, 0}},
             {Complex(-1.0, 0.0), {1, 1, 0}},
             {Complex(0.5, 0.0), {0, 1, 1}}};

  GridFunction expect(n, L);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a = u.samples[i], b = ux.samples[i], c = uxx.samples[i];
    expect.samples[i] = 2.0 * a * a - a * b + 0.5 * b * c;
  }
  CHECK(rel_diff(evaluate(f, u), expect) < 1e-12);

  std::array<GridFunction, 3> fields{u, ux, uxx};
  CHECK(rel_diff(evaluate_fields(f.terms, fields), expect) < 1e-12);
}

TEST_CASE("inadmissible polynomials are rejected") {
  Nonlinearity empty;
  CHECK_THROWS_AS(empty.validate(), ConfigError);
  Nonlinearity linear;
  linear.terms = {{Complex(1.0, 0.0), {1, 0, 0}}};
  CHECK_THROWS_AS(linear.validate(), ConfigError);
  Nonlinearity negative;
  negative.terms = {{Complex(1.0, 0.0), {2, -1, 0}}};
  CHECK_THROWS_AS(negative.validate(), ConfigError);
  Nonlinearity ok;
  ok.terms = {{Complex(1.0, 0.0), {1, 0, 1}}};
  CHECK_NOTHROW(ok.validate());
  CHECK(ok.max_order() == 2);
}

TEST_CASE("exponent calculus reproduces the hand table") {
  struct Row {
    std::array<int, 3> alpha;
    Rational sg, lam, floor;
  };
  const std::vector<Row> rows{
      {{2, 0, 0}, Rational(1, 2), Rational(-3), Rational(1, 2)},
      {{3, 0, 0}, Rational(1), Rational(-3, 2), Rational(1)},
      {{1, 1, 0}, Rational(3, 2), Rational(-2), Rational(3, 2)},
      {{1, 2, 0}, Rational(2), Rational(-1, 2), Rational(2)},
      {{1, 0, 1}, Rational(5, 2), Rational(-1), Rational(5, 2)},
      {{0, 2, 0}, Rational(5, 2), Rational(-1), Rational(5, 2)},
      {{1, 0, 2}, Rational(3), Rational(1, 2), Rational(3)},
      {{0, 1, 1}, Rational(7, 2), Rational(0), Rational(7, 2)},
      {{0, 0, 2}, Rational(9, 2), Rational(1), Rational(9, 2)}};
  for (const auto& row : rows) {
    CAPTURE(row.alpha[0]);
    CAPTURE(row.alpha[1]);
    CAPTURE(row.alpha[2]);
    Nonlinearity f;
    f.terms = {{Complex(1.0, 0.0), row.alpha}};
    CHECK(sigma0_of_term(row.alpha) == row.sg);
    CHECK(sigma0(f) == row.sg);
    CHECK(lambda_exponent(f) == row.lam);
    CHECK(s0(f) == row.floor);
  }

  // Mixed polynomial: both exponents take the max over terms.
  Nonlinearity mixed;
  mixed.terms = {{Complex(1.0, 0.0), {2, 0, 0}}, {Complex(1.0, 0.0), {0, 0, 2}}};
  CHECK(sigma0(mixed) == Rational(9, 2));
  CHECK(lambda_exponent(mixed) == Rational(1));
  CHECK(s0(mixed) == Rational(9, 2));
}

TEST_CASE("difference factorization is algebraically exact") {
  const std::size_t n = 32;
  const double L = 8.0;
  const std::vector<int> alpha{2, 1, 3};
  std::vector<GridFunction> u, v;
  for (int i = 0; i < 3; ++i) {
    u.push_back(random_grid(n, L, 200 + static_cast<std::uint64_t>(i)));
    v.push_back(random_grid(n, L, 300 + static_cast<std::uint64_t>(i)));
  }
  auto monomial = [&](const std::vector<GridFunction>& w) {
    GridFunction p(n, L);
    for (auto& s : p.samples) s = Complex(1.0, 0.0);
    for (std::size_t j = 0; j < alpha.size(); ++j)
      for (int q = 0; q < alpha[j]; ++q) p = pointwise(p, w[j]);
    return p;
  };
  GridFunction direct = monomial(u) - monomial(v);

  GridFunction assembled(n, L);
  for (const auto& part : polynomial_difference(alpha, u, v)) {
    GridFunction d = u[part.factor] - v[part.factor];
    assembled = assembled + pointwise(d, part.cofactor);
  }
  CHECK(rel_diff(assembled, direct) < 1e-12);
}
