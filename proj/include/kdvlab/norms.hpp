#pragma once

#include <string>
#include <vector>

#include "kdvlab/grid.hpp"
#include "kdvlab/partition.hpp"

namespace kdvlab {

enum class BlockInner { L2, LInf };

// sum_Q ||chi_Q u||_inner over the scale-2^l partition.
double l1_block_norm(const GridFunction& u, int scale_exponent, BlockInner inner);

// Weighted graded Sobolev norm:
// ||u||^2 = sum_j 2^{2 s j} (sum_{Q in scale 2^{2j}} ||chi_Q S_j u||_{L^2})^2.
double l1hs_norm(const GridFunction& u, double s);

// Frequency-weighted sup norm: sup_j 2^{gamma j} ||S_j u||_inf.
double zygmund_norm(const GridFunction& u, double gamma);

// Local-energy norm over the stored time interval:
// sup_l sup_Q 2^{-l/2} ||u||_{L^2(time x Q)}, sharp cubes, trapezoid in time.
double x_norm(const SpaceTimeFunction& u);

double linfty_l2(const SpaceTimeFunction& u);  // sup_t ||u(t)||_{L^2}
double l1t_l2(const SpaceTimeFunction& u);     // integral_t ||u(t)||_{L^2} dt

// Band-adapted solution norm: 2^j ||u||_X + ||u||_{L^inf_t L^2_x}.
double xj_norm(const SpaceTimeFunction& u, int j);

// Upper bound for the band-adapted forcing norm: the infimum over the
// restricted decomposition family
//   min( min_l 2^{-j} 2^{l/2} sum_{Q in scale l} ||f||_{L^2(time x Q)},
//        ||f||_{L^1_t L^2_x} ).
double yj_surrogate(const SpaceTimeFunction& f, int j);
// Trivially valid lower bound: 2^{-j} ||f||_{L^1_t L^2_x}.
double yj_lower_bound(const SpaceTimeFunction& f, int j);
// Value of one member of the restricted family (used by property tests).
double yj_branch_single_scale(const SpaceTimeFunction& f, int j, int scale_exponent);

// sum_Q Xj(chi_Q u) over the scale-2^l partition.
double l1_block_norm_xj(const SpaceTimeFunction& u, int scale_exponent, int j);
// sum_Q yj_surrogate(chi_Q f) over the scale-2^l partition.
double l1_block_norm_yj(const SpaceTimeFunction& f, int scale_exponent, int j);

// Graded space-time norms:
// ||u||^2 = sum_j 2^{2 s j} (sum_{Q in scale 2^{2j}} Xj(chi_Q S_j u))^2, and
// the same with the forcing surrogate in place of Xj.
double l1xs_norm(const SpaceTimeFunction& u, double s);
double l1ys_norm(const SpaceTimeFunction& f, double s);

// Per-band, per-cube contribution table; total is assembled from the rows
// with the same aggregation the norm uses.
struct NormBreakdown {
  std::string norm_id;
  double exponent = 0.0;
  double total = 0.0;
  struct Row {
    int band;
    std::size_t cube;
    double contribution;
  };
  std::vector<Row> rows;
};

NormBreakdown l1hs_breakdown(const GridFunction& u, double s);
NormBreakdown l1xs_breakdown(const SpaceTimeFunction& u, double s);
NormBreakdown l1ys_breakdown(const SpaceTimeFunction& f, double s);

}  // namespace kdvlab
