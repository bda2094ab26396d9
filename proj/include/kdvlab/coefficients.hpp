#pragma once

#include <array>
#include <vector>

#include "kdvlab/grid.hpp"
#include "kdvlab/nonlinearity.hpp"
#include "kdvlab/rational.hpp"
#include "kdvlab/rescaling.hpp"

namespace kdvlab {

// One collected right-side term: field(x) * v^{beta0} v_x^{beta1} v_xx^{beta2},
// tagged with the source monomial alpha and its scale rate
// lambda - 3 - lambda|alpha| + alpha1 + 2 alpha2 (exponent of 2^k baked into
// the field).
struct CoefficientTerm {
  std::array<int, 3> alpha{};
  std::array<int, 3> beta{};
  Rational rate;
  GridFunction field;
};

// The frozen-coefficient form of the evolution for the high-frequency part v:
//   (d_t + d_x^3 + a d_x^2) v = G(v) + L(v) + R
// where a collects the v_xx-linear terms of the quadratic monomials (moved to
// the left side, hence the sign flip), G the parts at least quadratic in v, L
// the parts linear in v (including v_xx-linear slots from cubic and higher
// monomials, whose rates are strictly negative), and R the source term
// evaluated at the frozen low-frequency profile.
struct FrozenCoefficients {
  GridFunction a;
  std::vector<CoefficientTerm> g_terms;
  std::vector<CoefficientTerm> l_terms;
  GridFunction r;
  int k = 0;
};

FrozenCoefficients assemble(const Nonlinearity& f, const RescaledData& data);

// G(v) + L(v) + R at a single time slice.
GridFunction evaluate_right_side(const FrozenCoefficients& c,
                                 const GridFunction& v);

// The nonlinearity with each coefficient scaled by 2^{rate k}: the right side
// of the evolution satisfied by the rescaled solution.
GridFunction evaluate_rescaled_nonlinearity(const Nonlinearity& f,
                                            const Rational& lambda, int k,
                                            const GridFunction& w);

// max over grid pairs x1 <= x2 of Re \int_{x1}^{x2} a dx (trapezoid), via a
// running minimum of the prefix integral; always >= 0.
double mizohata_diagnostic(const GridFunction& a);

// Relative defect of the exact algebraic identity
//   G(v) + L(v) + sum_alpha R_alpha - a v_xx = scaled F(low + v),
// measured against the right side's L2 norm.  Rounding-level for fields whose
// products stay under the grid Nyquist frequency.
double consistency_residual(const Nonlinearity& f, const RescaledData& data,
                            const FrozenCoefficients& c, const GridFunction& v);

// Decay of the collected coefficients in k:
//   a_graded      ||a||_{l1-graded L2}, bound 0;
//   a_uniform     ||a||_{C*, gamma}, bound -1;
//   da_r{1,2}_graded  ||d^r a||, bound: strictly negative slope required.
SlopeTable verify_coefficient_bounds(const Nonlinearity& f,
                                     const GridFunction& u0, double s,
                                     double gamma,
                                     const std::vector<int>& k_range);

}  // namespace kdvlab
