#pragma once

#include <functional>

#include "kdvlab/cutoff.hpp"
#include "kdvlab/grid.hpp"

namespace kdvlab {

// Unitary transform pair adapted to the centered grid: coefficients c_n with
// u(x_i) = N^{-1/2} sum_n c_n e^{i xi_n x_i}, xi_n = 2 pi n / L,
// n in (-N/2, N/2].  Parseval: sum |c_n|^2 = sum |u_i|^2.
std::vector<Complex> fourier_forward(const GridFunction& u);
GridFunction fourier_inverse(const std::vector<Complex>& coef, double domain_length);

// Amplitude-convention spectrum (coefficients of e^{i xi_n x}); the workhorse
// for multipliers, padding and resampling.  c_unitary = sqrt(N) * amp.
Spectrum analyze(const GridFunction& u);
GridFunction synthesize(const Spectrum& s);

// out_n = m(xi_n) * amp_n.
GridFunction apply_multiplier(const GridFunction& u,
                              const std::function<Complex(double)>& m);

// d^r/dx^r for r in {0,1,2,3} via (i xi)^r.
GridFunction spectral_derivative(const GridFunction& u, int r);

// e^{-t d^3/dx^3}: multiplier e^{i t xi^3}.  Unitary on L^2.
GridFunction airy_propagate(const GridFunction& u, double t);

// e^{-t (d^3/dx^3 + abar d^2/dx^2)}: multiplier e^{t (i xi^3 + abar xi^2)}.
// Throws a budget error when the real part would overflow.
GridFunction flow_propagate(const GridFunction& u, double t, Complex abar);

// Dyadic band projection S_j (multiplier phi_band(j, xi)); j <= j_max.
GridFunction band_project(const GridFunction& u, int j);
// Low-pass S_{<=k}: multiplier phi0(2^-k xi) = sum_{j<=k} phi_band(j, xi).
GridFunction lowpass_project(const GridFunction& u, int k);
// Sharp Galerkin projector onto |xi| <= budget_frequency.  The solution
// pipeline works on this closed subspace: gauge weights and their defect
// terms are analytic but not band-limited, so their tails past the budget
// are cut here rather than tripping the norm gates downstream.
GridFunction budget_project(const GridFunction& u);

int grid_j_max(const GridFunction& u);

// Fraction of coefficient L^2 mass above the budget frequency (amplitude
// scale: sqrt of the mass ratio).
double budget_overflow_fraction(const GridFunction& u);
// Throws a budget error when budget_overflow_fraction exceeds tol.  The
// default is a gross-violation tripwire: genuine budget breaches (data past
// the resummable range, products of unrescaled data) measure >= 1e-2, while
// round-trip dust amplified by xi^3 multiplier chains can reach ~1e-8.
void require_within_budget(const GridFunction& u, double tol = 1e-6,
                           const char* who = "spectral operation");

// Mean-zero antiderivative primitive P with P' = u - mean(u), normalized so
// that P(0) = 0 (x = 0 is the grid point i = N/2).  Used by the gauge weight:
// P(x) = integral_0^x (u - mean).
GridFunction antiderivative_from_zero(const GridFunction& u);

// Exact spectral resampling onto a grid with refine*N points (same L): adds
// zero coefficients above the original band.
GridFunction refine_grid(const GridFunction& u, std::size_t refine);

// Per-slice band projection.
SpaceTimeFunction band_project(const SpaceTimeFunction& u, int j);
SpaceTimeFunction spectral_derivative(const SpaceTimeFunction& u, int r);

}  // namespace kdvlab
