#include "kdvlab/nonlinearity.hpp"

#include <algorithm>
#include <cmath>

#include "kdvlab/spectral.hpp"

namespace kdvlab {

void Nonlinearity::validate() const {
  if (terms.empty()) throw ConfigError("nonlinearity needs at least one term");
  for (const auto& t : terms) {
    for (int a : t.alpha)
      if (a < 0) throw ConfigError("negative monomial exponent");
    if (t.order() < 2)
      throw ConfigError("constant and linear terms are not admissible");
  }
}

int Nonlinearity::max_order() const {
  int m = 0;
  for (const auto& t : terms) m = std::max(m, t.order());
  return m;
}

GridFunction dealiased_product(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b);
  GridFunction fa = refine_grid(a, 2);
  GridFunction fb = refine_grid(b, 2);
  for (std::size_t i = 0; i < fa.size(); ++i) fa.samples[i] *= fb.samples[i];
  Spectrum fine = analyze(fa);
  Spectrum coarse;
  coarse.domain_length = a.domain_length;
  coarse.amp.assign(a.size(), Complex(0.0, 0.0));
  long n = static_cast<long>(a.size());
  long big = static_cast<long>(fine.size());
  for (long f = -n / 2 + 1; f <= n / 2; ++f) {
    long sfine = f >= 0 ? f : f + big;
    long scoarse = f >= 0 ? f : f + n;
    coarse.amp[static_cast<std::size_t>(scoarse)] =
        fine.amp[static_cast<std::size_t>(sfine)];
  }
  return synthesize(coarse);
}

GridFunction evaluate_fields(const std::vector<Term>& terms,
                             const std::array<GridFunction, 3>& fields) {
  GridFunction acc(fields[0].size(), fields[0].domain_length);
  for (const auto& t : terms) {
    if (t.coefficient == Complex(0.0, 0.0)) continue;
    GridFunction prod;
    bool started = false;
    for (int r = 0; r < 3; ++r) {
      for (int p = 0; p < t.alpha[static_cast<std::size_t>(r)]; ++p) {
        if (!started) {
          prod = fields[static_cast<std::size_t>(r)];
          started = true;
        } else {
          prod = dealiased_product(prod, fields[static_cast<std::size_t>(r)]);
        }
      }
    }
    if (!started) continue;
    acc = acc + t.coefficient * prod;
  }
  return acc;
}

GridFunction evaluate(const Nonlinearity& f, const GridFunction& u) {
  f.validate();
  require_within_budget(u, 1e-6, "nonlinearity evaluation");
  std::array<GridFunction, 3> fields{u, spectral_derivative(u, 1),
                                     spectral_derivative(u, 2)};
  return evaluate_fields(f.terms, fields);
}

Rational lambda_exponent(const Nonlinearity& f) {
  f.validate();
  bool have = false;
  Rational best;
  for (const auto& t : f.terms) {
    if (t.coefficient == Complex(0.0, 0.0)) continue;
    Rational cand(t.alpha[1] + 2 * t.alpha[2] - 3, t.order() - 1);
    if (!have || best < cand) {
      best = cand;
      have = true;
    }
  }
  if (!have) throw ConfigError("all nonlinearity coefficients vanish");
  return best;
}

Rational sigma0_of_term(const std::array<int, 3>& alpha) {
  const int a0 = alpha[0], a1 = alpha[1], a2 = alpha[2];
  // Ordered most specific to least; first match wins.
  if (a0 == 2 && a1 == 0 && a2 == 0) return Rational(1, 2);
  if (a0 >= 3 && a1 == 0 && a2 == 0) return Rational(1);
  if (a0 >= 1 && a1 == 1 && a2 == 0) return Rational(3, 2);
  if (a0 >= 1 && a1 >= 2 && a2 == 0) return Rational(2);
  if (a0 >= 1 && a2 == 1) return Rational(5, 2);
  if (a0 == 0 && a1 >= 2 && a2 == 0) return Rational(5, 2);
  if (a0 >= 1 && a2 >= 2) return Rational(3);
  if (a0 == 0 && a1 >= 1 && a2 >= 1) return Rational(7, 2);
  if (a0 == 0 && a1 == 0 && a2 >= 2) return Rational(9, 2);
  throw ConfigError("monomial class outside the admissible table");
}

Rational sigma0(const Nonlinearity& f) {
  f.validate();
  bool have = false;
  Rational best;
  for (const auto& t : f.terms) {
    if (t.coefficient == Complex(0.0, 0.0)) continue;
    Rational cand = sigma0_of_term(t.alpha);
    if (!have || best < cand) {
      best = cand;
      have = true;
    }
  }
  if (!have) throw ConfigError("all nonlinearity coefficients vanish");
  return best;
}

Rational s0(const Nonlinearity& f) {
  return rational_max(sigma0(f), lambda_exponent(f) + Rational(2));
}

std::vector<DifferenceCofactor> polynomial_difference(
    const std::vector<int>& alpha, const std::vector<GridFunction>& u,
    const std::vector<GridFunction>& v) {
  if (alpha.size() != u.size() || alpha.size() != v.size())
    throw ConfigError("polynomial difference: arity mismatch");
  if (alpha.empty()) throw ConfigError("polynomial difference: empty monomial");
  const GridFunction& model = u.front();
  std::vector<DifferenceCofactor> out;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (alpha[j] == 0) continue;
    // q_j = sum_{k=0}^{alpha_j - 1} u_1^{a_1} .. u_{j-1}^{a_{j-1}} u_j^k
    //       v_j^{alpha_j - 1 - k} v_{j+1}^{a_{j+1}} .. v_r^{a_r}
    GridFunction q(model.size(), model.domain_length);
    for (int k = 0; k < alpha[j]; ++k) {
      GridFunction p(model.size(), model.domain_length);
      for (auto& s : p.samples) s = Complex(1.0, 0.0);
      for (std::size_t m = 0; m < j; ++m)
        for (int e = 0; e < alpha[m]; ++e) p = pointwise(p, u[m]);
      for (int e = 0; e < k; ++e) p = pointwise(p, u[j]);
      for (int e = 0; e < alpha[j] - 1 - k; ++e) p = pointwise(p, v[j]);
      for (std::size_t m = j + 1; m < alpha.size(); ++m)
        for (int e = 0; e < alpha[m]; ++e) p = pointwise(p, v[m]);
      q = q + p;
    }
    out.push_back({j, std::move(q)});
  }
  return out;
}

}  // namespace kdvlab
