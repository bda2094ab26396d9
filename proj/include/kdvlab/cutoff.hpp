#pragma once

#include <cstddef>

namespace kdvlab {

// Smooth dyadic frequency cutoffs built from the C^infty transition
// sigma(t) = q(t) / (q(t) + q(1-t)), q(t) = e^{-1/t} (t > 0).
namespace cutoff {

// Monotone ramp: 0 for t <= 0, 1 for t >= 1.
double sigma_profile(double t);

// Low-pass bump: 1 for |xi| <= 1, 0 for |xi| >= 2, sigma(2 - |xi|) between.
double phi0(double xi);

// Dyadic band j >= 1: phi0(2^-j xi) - phi0(2^-j+1 xi); phi_0 is phi0 itself.
// Band j is supported in 2^{j-1} < |xi| < 2^{j+1} with exact zeros outside.
double phi_band(int j, double xi);

// Largest j whose band fits strictly under Nyquist: 2^{j+1} <= pi N / L.
int j_max(std::size_t n, double domain_length);

// Admissible data must vanish above this frequency: the bands 0..j_max resum
// to exactly 1 on |xi| <= 2^{j_max}.
double budget_frequency(std::size_t n, double domain_length);

}  // namespace cutoff
}  // namespace kdvlab
