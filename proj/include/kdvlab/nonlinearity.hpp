#pragma once

#include <array>
#include <vector>

#include "kdvlab/grid.hpp"
#include "kdvlab/rational.hpp"

namespace kdvlab {

// One monomial c * u^{a0} (u_x)^{a1} (u_xx)^{a2}.
struct Term {
  Complex coefficient{0.0, 0.0};
  std::array<int, 3> alpha{0, 0, 0};

  int order() const { return alpha[0] + alpha[1] + alpha[2]; }
};

// Polynomial right side F(u, u_x, u_xx) = sum of terms, each of total order
// >= 2 (no constant or linear forcing) and at most max_order.
struct Nonlinearity {
  std::vector<Term> terms;

  void validate() const;
  int max_order() const;
};

// Aliasing-safe product: both factors are zero-padded to a twice-finer grid,
// multiplied pointwise, and the result is projected back onto the original
// band.  Exact whenever the true product fits under the original Nyquist.
GridFunction dealiased_product(const GridFunction& a, const GridFunction& b);

// F evaluated at u with pairwise dealiased products; u must respect the
// frequency budget (products inflate bandwidth).
GridFunction evaluate(const Nonlinearity& f, const GridFunction& u);
// Same, with the three derivative fields supplied by the caller.
GridFunction evaluate_fields(const std::vector<Term>& terms,
                             const std::array<GridFunction, 3>& fields);

// Scaling exponent: max over terms of (a1 + 2 a2 - 3) / (|alpha| - 1).
Rational lambda_exponent(const Nonlinearity& f);

// Minimal regularity scale of one monomial class / of the whole polynomial.
Rational sigma0_of_term(const std::array<int, 3>& alpha);
Rational sigma0(const Nonlinearity& f);

// s0 = max(sigma0, lambda + 2).
Rational s0(const Nonlinearity& f);

// Factorization p(u) - p(v) = sum_j (u_j - v_j) q_j for the monomial
// prod_j x_j^{alpha_j} evaluated at the given factor fields (pointwise
// products; the identity is algebraic and exact on grid samples).
struct DifferenceCofactor {
  std::size_t factor;  // which slot the difference u_j - v_j multiplies
  GridFunction cofactor;
};
std::vector<DifferenceCofactor> polynomial_difference(
    const std::vector<int>& alpha, const std::vector<GridFunction>& u,
    const std::vector<GridFunction>& v);

}  // namespace kdvlab
