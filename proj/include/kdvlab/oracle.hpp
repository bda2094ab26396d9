#pragma once

#include <string>

#include "kdvlab/grid.hpp"
#include "kdvlab/nonlinearity.hpp"

namespace kdvlab {

// Reference time integrator, independent of the constructive solution
// pipeline: the third-derivative flow is applied exactly as a Fourier
// multiplier (integrating factor), the nonlinearity by an explicit 4-stage
// Runge-Kutta step on the transformed variable.  Shares the dealiased
// nonlinearity evaluation with the rest of the library so disagreements
// between the two solvers isolate to time integration.
struct OracleConfig {
  int substeps_per_unit = 256;  // power of two >= 64
  int output_intervals = 32;    // stored slices - 1
  std::string scheme = "if-rk4";

  void validate() const;
};

// Largest eigenvalue-magnitude estimate of the linearized nonlinearity at u:
// bounds the stable explicit step through dt * rho <= ~2.5.
double stability_rate(const Nonlinearity& f, const GridFunction& u);

// Integrates (d_t + d_x^3) u = F(u, u_x, u_xx) from u0 to t_end.  Substeps
// per output interval start from the configured per-unit density and double
// until the stability bound holds (re-estimated at every output step);
// raises BudgetError("step unstable...") if the L2 norm grows tenfold within
// one substep.
SpaceTimeFunction oracle_solve(const GridFunction& u0, const Nonlinearity& f,
                               double t_end, const OracleConfig& cfg);

}  // namespace kdvlab
