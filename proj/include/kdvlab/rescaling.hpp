#pragma once

#include <string>
#include <vector>

#include "kdvlab/grid.hpp"
#include "kdvlab/nonlinearity.hpp"
#include "kdvlab/rational.hpp"

namespace kdvlab {

// Scale change u -> 2^{lambda k} u(2^{-k} x) realised as an exact spectral
// slot copy: the target grid keeps the source spacing and enlarges the domain
// by 2^k, so every source mode lands on a target mode and no interpolation
// happens.  k < 0 shrinks the domain instead (spectral truncation, with the
// two modes that fold onto the coarse Nyquist slot summed); this is the exact
// inverse of the k > 0 map.
GridFunction rescale(const GridFunction& u0, int k, const Rational& lambda);

// Low/high frequency split of rescaled data: low is the unit-scale spectral
// low-pass of u0k (support inside |xi| <= 2), high the remainder.
struct RescaledData {
  int k = 0;
  GridFunction low;
  GridFunction high;
  Rational lambda;
  double source_domain_length = 0.0;
  double target_domain_length = 0.0;
};

RescaledData split_frequencies(const GridFunction& u0k, int k,
                               const Rational& lambda,
                               double source_domain_length);

// Full preparation step: rescale then split.
RescaledData prepare_rescaled_data(const GridFunction& u0, int k,
                                   const Rational& lambda);

// Maps a solution of the rescaled problem on [t_start, t_end] back to the
// original variables: slices are descaled and times multiplied by 2^{-3k}.
SpaceTimeFunction descale_solution(const SpaceTimeFunction& v, int k,
                                   const Rational& lambda);

// Least-squares slope of log2(values) against k; needs >= 2 points, all
// values strictly positive.
double fit_log2_slope(const std::vector<int>& ks,
                      const std::vector<double>& values);

struct SlopeEntry {
  std::string estimate_id;
  std::vector<int> ks;
  std::vector<double> norms;
  double fitted_slope = 0.0;
  double bound = 0.0;
  bool pass = false;
  bool skipped = false;  // all-zero norms: nothing to fit
};

struct SlopeTable {
  std::vector<SlopeEntry> entries;
  bool all_pass() const;
};

// Measures how the low/high components of the rescaled data decay in k and
// fits log2 slopes:
//   low_r{r}_graded   ||d^r low||_{l1-graded L2, order 0}, bound lambda+1-r
//                     when s > r+1, else -(s-lambda-2)/2 for s <= r+1;
//   low_r{r}_uniform  ||d^r low||_{C*, gamma=1}, bound lambda-r (s > r+1/2);
//   high_graded       ||high||_{l1 H^s}, bound -(s-lambda-2).
// An entry passes when slope <= bound + 0.25 (block leakage moves constants,
// not rates).
SlopeTable verify_scaling_rates(const GridFunction& u0, double s,
                                const Nonlinearity& f,
                                const std::vector<int>& k_range);

}  // namespace kdvlab
