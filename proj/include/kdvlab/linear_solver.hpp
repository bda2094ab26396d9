#pragma once

#include <vector>

#include "kdvlab/grid.hpp"

namespace kdvlab {

// Pointwise gauge e^{-(1/3) \int_0^x (a - abar)}: the periodic part of the
// conjugation weight.  The mean abar cannot be gauged away on a torus
// (e^{\int a} would be multivalued); it rides along in the constant-
// coefficient flow instead.
struct GaugeWeight {
  GridFunction plus;   // e^{+(1/3)\int_0^x (a - abar)}
  GridFunction minus;  // e^{-(1/3)\int_0^x (a - abar)}
  Complex mean;        // abar
};

GaugeWeight make_gauge(const GridFunction& a);

// Solves (d_t + d_x^3 + abar d_x^2) w = g, w(0) = w0, on g's time interval.
// The forcing is read as piecewise linear in time between slices, for which
// the per-mode exponential-integrator step is exact; the returned slices are
// therefore the exact solution for that interpretation of g.
SpaceTimeFunction duhamel_flow(const GridFunction& w0,
                               const SpaceTimeFunction& g, Complex mean);

// mean = 0: the plain Airy Duhamel formula.
SpaceTimeFunction duhamel_airy(const GridFunction& w0,
                               const SpaceTimeFunction& g);

// One pass of the conjugation scheme for (d_t + d_x^3 + a d_x^2) v = f,
// v(0) = v0: returns the approximate solution v = minus * w and the exact
// defect f - (d_t + d_x^3 + a d_x^2) v in closed form,
//   defect = minus * [ (a'_x + a'^2/3 + (2/3) abar a') w_x
//                      - ((2/27) a'^3 - a'_xx/3 + abar a'^2/9 - abar a'_x/3) w ]
// with a' = a - abar.  The closed form follows from the conjugation identity,
// so no time differencing enters the iteration loop.
std::pair<SpaceTimeFunction, SpaceTimeFunction> gauge_conjugate_solve(
    const GridFunction& a, const GridFunction& v0, const SpaceTimeFunction& f);

struct LinearSolveReport {
  std::vector<double> residual_norms;  // ||f^{(n)}||_{graded Y}, n = 0, 1, ...
  std::vector<double> ratios;          // residual_norms[n] / residual_norms[n-1]
  double solution_norm = 0.0;          // graded X norm of the returned sum
  bool converged = false;
  int iterations = 0;
};

// Error-correction iteration: v^{(n)} solves the gauge step with forcing
// f^{(n)} (initial data v0 on the first pass, zero after), f^{(n+1)} is the
// returned defect, and the solution is the partial sum.  Stops when the
// defect norm drops below tol relative to max(||f||_Y, ||v0||_H), or after
// max_iter passes; raises NonContractiveError after three consecutive
// ratios >= 0.9.
std::pair<SpaceTimeFunction, LinearSolveReport> iterate_linear_solve(
    const GridFunction& a, const GridFunction& v0, const SpaceTimeFunction& f,
    double s, int max_iter = 40, double tol = 1e-8);

// Time derivative sampled at the slice times: fourth-order centered stencil
// in the interior, matching-order one-sided stencils at the ends.  A test
// probe, deliberately independent of the integrator above.
SpaceTimeFunction time_derivative_probe(const SpaceTimeFunction& u);

}  // namespace kdvlab
