#pragma once

#include <memory>
#include <vector>

#include "kdvlab/grid.hpp"

namespace kdvlab {

// Partition of the torus into ~L/2^l intervals ("cubes") of length 2^l,
// together with a smooth partition of unity subordinate to it.  Each weight
// chi_Q is a translate of one smooth bump (transition half-width tau outside
// the cube edges) renormalized pointwise so that sum_Q chi_Q = 1 exactly on
// the grid.  chi_Q = 1 at distance >= tau inside Q and supp chi_Q stays
// inside B(Q, tau), tau <= 1/4 by default.
class DyadicPartition {
 public:
  struct Cube {
    // Smooth weight over the (possibly wrapping) index window
    // window_start .. window_start + weight.size() - 1, taken mod N.
    std::ptrdiff_t window_start = 0;
    std::vector<double> weight;
    // Sharp half-open index range [begin, end) of the cube itself; cubes
    // tile 0..N-1 contiguously, no wrap.
    std::size_t begin = 0;
    std::size_t end = 0;
    // Sub-range of [begin, end) at distance >= tau from both edges.
    std::size_t core_begin = 0;
    std::size_t core_end = 0;
  };

  DyadicPartition(std::size_t grid_n, double domain_length, int scale_exponent,
                  double tau);

  int scale_exponent() const { return scale_exponent_; }
  double scale_length() const;  // 2^l
  double cube_length() const { return cube_length_; }
  std::size_t cube_count() const { return cubes_.size(); }
  std::size_t grid_n() const { return grid_n_; }
  double domain_length() const { return domain_length_; }
  double tau() const { return tau_; }
  const Cube& cube(std::size_t q) const { return cubes_[q]; }
  bool trivial() const { return cubes_.size() == 1; }

  // Largest pointwise defect of sum_Q chi_Q from 1.
  double unity_defect() const;

 private:
  std::size_t grid_n_;
  double domain_length_;
  int scale_exponent_;
  double tau_;
  double cube_length_;
  std::vector<Cube> cubes_;
};

// Process-wide cache; partitions are immutable once built.
std::shared_ptr<const DyadicPartition> get_partition(std::size_t grid_n,
                                                     double domain_length,
                                                     int scale_exponent,
                                                     double tau = 0.25);

// Scale exponents worth scanning on this torus: 0 .. ceil(log2 L) (the last
// one is the trivial single cube).
int max_scale_exponent(double domain_length);

}  // namespace kdvlab
