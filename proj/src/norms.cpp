#include "kdvlab/norms.hpp"

#include <cmath>

#include "kdvlab/spectral.hpp"

namespace kdvlab {
namespace {

double pow2(double e) { return std::pow(2.0, e); }

// Trapezoid-in-time pointwise mass: T_i = sum_j w_j |u_j(x_i)|^2 dt with
// endpoint weights 1/2.  ||u||^2_{L^2(time x Q)} = h sum_{i in Q} T_i.
std::vector<double> time_mass(const SpaceTimeFunction& u) {
  const std::size_t n = u.slices.front().size();
  std::vector<double> mass(n, 0.0);
  const double dt = u.dt();
  for (std::size_t j = 0; j < u.slices.size(); ++j) {
    double w = (j == 0 || j + 1 == u.slices.size()) ? 0.5 * dt : dt;
    const auto& s = u.slices[j].samples;
    for (std::size_t i = 0; i < n; ++i) mass[i] += w * std::norm(s[i]);
  }
  return mass;
}

std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
  std::ptrdiff_t m = i % static_cast<std::ptrdiff_t>(n);
  if (m < 0) m += static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(m);
}

// Per-slice spectra shared across band projections.
struct StSpectra {
  std::vector<Spectrum> slices;
  double t_start = 0.0, t_end = 0.0;
};

StSpectra analyze_all(const SpaceTimeFunction& u) {
  StSpectra s;
  s.t_start = u.t_start;
  s.t_end = u.t_end;
  s.slices.reserve(u.slices.size());
  for (const auto& g : u.slices) s.slices.push_back(analyze(g));
  return s;
}

SpaceTimeFunction synth_band(const StSpectra& sp, int j) {
  SpaceTimeFunction out;
  out.t_start = sp.t_start;
  out.t_end = sp.t_end;
  out.slices.reserve(sp.slices.size());
  for (const auto& s : sp.slices) {
    Spectrum masked = s;
    for (std::size_t slot = 0; slot < masked.size(); ++slot)
      masked.amp[slot] *= cutoff::phi_band(j, masked.xi(slot));
    out.slices.push_back(synthesize(masked));
  }
  return out;
}

void require_st_within_budget(const SpaceTimeFunction& u, const char* who) {
  // One check on the dominant slice keeps the cost negligible; the flow and
  // products preserve band structure across slices.
  std::size_t pick = 0;
  double best = -1.0;
  for (std::size_t j = 0; j < u.slices.size(); ++j) {
    double m = 0.0;
    for (const auto& v : u.slices[j].samples) m += std::norm(v);
    if (m > best) {
      best = m;
      pick = j;
    }
  }
  require_within_budget(u.slices[pick], 1e-6, who);
}

// Smooth-weighted cube piece: weight chi over a wrapping window.  All block
// norms reduce to scans over these.
struct Piece {
  std::ptrdiff_t start = 0;
  const std::vector<double>* chi = nullptr;
};

// L^2(time x Q')^2 masses of chi * field per sharp cube of a scan partition,
// accumulated from a pointwise mass array.
void scan_cube_masses(const Piece& p, const std::vector<double>& mass, double h,
                      const DyadicPartition& scan, std::vector<double>& out,
                      std::vector<std::size_t>& touched) {
  const std::size_t n = mass.size();
  const std::size_t count = scan.cube_count();
  for (std::size_t w = 0; w < p.chi->size(); ++w) {
    double c = (*p.chi)[w];
    if (c == 0.0) continue;
    std::size_t gi = wrap(p.start + static_cast<std::ptrdiff_t>(w), n);
    std::size_t q = gi * count / n;
    if (out[q] == 0.0) touched.push_back(q);
    out[q] += c * c * mass[gi] * h;
  }
}

double piece_weighted_l2sq(const Piece& p, const std::vector<Complex>& samples,
                           double h) {
  double acc = 0.0;
  const std::size_t n = samples.size();
  for (std::size_t w = 0; w < p.chi->size(); ++w) {
    double c = (*p.chi)[w];
    if (c == 0.0) continue;
    std::size_t gi = wrap(p.start + static_cast<std::ptrdiff_t>(w), n);
    acc += c * c * std::norm(samples[gi]) * h;
  }
  return acc;
}

// sup_l sup_Q 2^{-l/2} ||chi u||_{L^2(time x Q)} for one weighted piece.
double piece_x_norm(const Piece& p, const std::vector<double>& mass, double h,
                    std::size_t n, double domain_length) {
  double best = 0.0;
  int lcap = max_scale_exponent(domain_length);
  std::vector<double> cube_mass;
  std::vector<std::size_t> touched;
  for (int l = 0; l <= lcap; ++l) {
    auto scan = get_partition(n, domain_length, l);
    cube_mass.assign(scan->cube_count(), 0.0);
    touched.clear();
    scan_cube_masses(p, mass, h, *scan, cube_mass, touched);
    double top = 0.0;
    for (std::size_t q : touched) top = std::max(top, cube_mass[q]);
    best = std::max(best, pow2(-0.5 * l) * std::sqrt(top));
  }
  return best;
}

double piece_linfty_l2(const Piece& p, const SpaceTimeFunction& u, double h) {
  double best = 0.0;
  for (const auto& s : u.slices)
    best = std::max(best, piece_weighted_l2sq(p, s.samples, h));
  return std::sqrt(best);
}

double piece_l1t_l2(const Piece& p, const SpaceTimeFunction& u, double h) {
  double acc = 0.0;
  const double dt = u.dt();
  for (std::size_t j = 0; j < u.slices.size(); ++j) {
    double w = (j == 0 || j + 1 == u.slices.size()) ? 0.5 * dt : dt;
    acc += w * std::sqrt(piece_weighted_l2sq(p, u.slices[j].samples, h));
  }
  return acc;
}

double piece_yj_surrogate(const Piece& p, const SpaceTimeFunction& u,
                          const std::vector<double>& mass, double h, std::size_t n,
                          double domain_length, int j) {
  int lcap = max_scale_exponent(domain_length);
  double best_atomic = -1.0;
  std::vector<double> cube_mass;
  std::vector<std::size_t> touched;
  for (int l = 0; l <= lcap; ++l) {
    auto scan = get_partition(n, domain_length, l);
    cube_mass.assign(scan->cube_count(), 0.0);
    touched.clear();
    scan_cube_masses(p, mass, h, *scan, cube_mass, touched);
    double sum = 0.0;
    for (std::size_t q : touched) sum += std::sqrt(cube_mass[q]);
    double value = pow2(-j) * pow2(0.5 * l) * sum;
    if (best_atomic < 0.0 || value < best_atomic) best_atomic = value;
  }
  double l1l2 = piece_l1t_l2(p, u, h);
  return std::min(best_atomic < 0.0 ? l1l2 : best_atomic, l1l2);
}

Piece whole_grid_piece(std::size_t n, std::vector<double>& ones) {
  ones.assign(n, 1.0);
  Piece p;
  p.start = 0;
  p.chi = &ones;
  return p;
}

}  // namespace

double l1_block_norm(const GridFunction& u, int scale_exponent, BlockInner inner) {
  u.validate();
  auto part = get_partition(u.size(), u.domain_length, scale_exponent);
  const double h = u.spacing();
  double total = 0.0;
  for (std::size_t q = 0; q < part->cube_count(); ++q) {
    const auto& cube = part->cube(q);
    if (inner == BlockInner::L2) {
      double acc = 0.0;
      for (std::size_t w = 0; w < cube.weight.size(); ++w) {
        double c = cube.weight[w];
        if (c == 0.0) continue;
        std::size_t gi = wrap(cube.window_start + static_cast<std::ptrdiff_t>(w),
                              u.size());
        acc += c * c * std::norm(u.samples[gi]) * h;
      }
      total += std::sqrt(acc);
    } else {
      double top = 0.0;
      for (std::size_t w = 0; w < cube.weight.size(); ++w) {
        double c = cube.weight[w];
        if (c == 0.0) continue;
        std::size_t gi = wrap(cube.window_start + static_cast<std::ptrdiff_t>(w),
                              u.size());
        top = std::max(top, c * std::abs(u.samples[gi]));
      }
      total += top;
    }
  }
  return total;
}

NormBreakdown l1hs_breakdown(const GridFunction& u, double s) {
  require_within_budget(u, 1e-6, "graded Sobolev norm");
  NormBreakdown b;
  b.norm_id = "l1hs";
  b.exponent = s;
  int jm = grid_j_max(u);
  const double h = u.spacing();
  double total_sq = 0.0;
  Spectrum spec = analyze(u);
  for (int j = 0; j <= jm; ++j) {
    Spectrum masked = spec;
    for (std::size_t slot = 0; slot < masked.size(); ++slot)
      masked.amp[slot] *= cutoff::phi_band(j, masked.xi(slot));
    GridFunction sj = synthesize(masked);
    auto part = get_partition(u.size(), u.domain_length, 2 * j);
    double block = 0.0;
    for (std::size_t q = 0; q < part->cube_count(); ++q) {
      const auto& cube = part->cube(q);
      double acc = 0.0;
      for (std::size_t w = 0; w < cube.weight.size(); ++w) {
        double c = cube.weight[w];
        if (c == 0.0) continue;
        std::size_t gi = wrap(cube.window_start + static_cast<std::ptrdiff_t>(w),
                              u.size());
        acc += c * c * std::norm(sj.samples[gi]) * h;
      }
      double v = std::sqrt(acc);
      b.rows.push_back({j, q, v});
      block += v;
    }
    total_sq += pow2(2.0 * s * j) * block * block;
  }
  b.total = std::sqrt(total_sq);
  return b;
}

double l1hs_norm(const GridFunction& u, double s) {
  return l1hs_breakdown(u, s).total;
}

double zygmund_norm(const GridFunction& u, double gamma) {
  require_within_budget(u, 1e-6, "frequency-weighted sup norm");
  int jm = grid_j_max(u);
  Spectrum spec = analyze(u);
  double best = 0.0;
  for (int j = 0; j <= jm; ++j) {
    Spectrum masked = spec;
    for (std::size_t slot = 0; slot < masked.size(); ++slot)
      masked.amp[slot] *= cutoff::phi_band(j, masked.xi(slot));
    best = std::max(best, pow2(gamma * j) * max_abs(synthesize(masked)));
  }
  return best;
}

double x_norm(const SpaceTimeFunction& u) {
  u.validate();
  const auto& g0 = u.slices.front();
  std::vector<double> mass = time_mass(u);
  std::vector<double> ones;
  Piece p = whole_grid_piece(g0.size(), ones);
  return piece_x_norm(p, mass, g0.spacing(), g0.size(), g0.domain_length);
}

double linfty_l2(const SpaceTimeFunction& u) {
  double best = 0.0;
  for (const auto& s : u.slices) best = std::max(best, l2_norm(s));
  return best;
}

double l1t_l2(const SpaceTimeFunction& u) {
  double acc = 0.0;
  const double dt = u.dt();
  for (std::size_t j = 0; j < u.slices.size(); ++j) {
    double w = (j == 0 || j + 1 == u.slices.size()) ? 0.5 * dt : dt;
    acc += w * l2_norm(u.slices[j]);
  }
  return acc;
}

double xj_norm(const SpaceTimeFunction& u, int j) {
  if (j < 0) throw ConfigError("negative band index");
  return pow2(j) * x_norm(u) + linfty_l2(u);
}

double yj_surrogate(const SpaceTimeFunction& f, int j) {
  if (j < 0) throw ConfigError("negative band index");
  f.validate();
  const auto& g0 = f.slices.front();
  std::vector<double> mass = time_mass(f);
  std::vector<double> ones;
  Piece p = whole_grid_piece(g0.size(), ones);
  return piece_yj_surrogate(p, f, mass, g0.spacing(), g0.size(),
                            g0.domain_length, j);
}

double yj_lower_bound(const SpaceTimeFunction& f, int j) {
  return pow2(-j) * l1t_l2(f);
}

double yj_branch_single_scale(const SpaceTimeFunction& f, int j,
                              int scale_exponent) {
  const auto& g0 = f.slices.front();
  std::vector<double> mass = time_mass(f);
  auto scan = get_partition(g0.size(), g0.domain_length, scale_exponent);
  const double h = g0.spacing();
  const std::size_t count = scan->cube_count();
  std::vector<double> cube_mass(count, 0.0);
  for (std::size_t i = 0; i < g0.size(); ++i)
    cube_mass[i * count / g0.size()] += mass[i] * h;
  double sum = 0.0;
  for (double m : cube_mass) sum += std::sqrt(m);
  return pow2(-j) * pow2(0.5 * scale_exponent) * sum;
}

double l1_block_norm_xj(const SpaceTimeFunction& u, int scale_exponent, int j) {
  u.validate();
  const auto& g0 = u.slices.front();
  auto part = get_partition(g0.size(), g0.domain_length, scale_exponent);
  std::vector<double> mass = time_mass(u);
  const double h = g0.spacing();
  double total = 0.0;
  for (std::size_t q = 0; q < part->cube_count(); ++q) {
    Piece p{part->cube(q).window_start, &part->cube(q).weight};
    double xv = piece_x_norm(p, mass, h, g0.size(), g0.domain_length);
    double lv = piece_linfty_l2(p, u, h);
    total += pow2(j) * xv + lv;
  }
  return total;
}

double l1_block_norm_yj(const SpaceTimeFunction& f, int scale_exponent, int j) {
  f.validate();
  const auto& g0 = f.slices.front();
  auto part = get_partition(g0.size(), g0.domain_length, scale_exponent);
  std::vector<double> mass = time_mass(f);
  const double h = g0.spacing();
  double total = 0.0;
  for (std::size_t q = 0; q < part->cube_count(); ++q) {
    Piece p{part->cube(q).window_start, &part->cube(q).weight};
    total += piece_yj_surrogate(p, f, mass, h, g0.size(), g0.domain_length, j);
  }
  return total;
}

namespace {

NormBreakdown graded_st_breakdown(const SpaceTimeFunction& u, double s,
                                  bool forcing) {
  u.validate();
  require_st_within_budget(u, forcing ? "graded forcing norm" : "graded solution norm");
  NormBreakdown b;
  b.norm_id = forcing ? "l1ys" : "l1xs";
  b.exponent = s;
  const auto& g0 = u.slices.front();
  int jm = grid_j_max(g0);
  const double h = g0.spacing();
  StSpectra spectra = analyze_all(u);
  double total_sq = 0.0;
  for (int j = 0; j <= jm; ++j) {
    SpaceTimeFunction sj = synth_band(spectra, j);
    std::vector<double> mass = time_mass(sj);
    auto part = get_partition(g0.size(), g0.domain_length, 2 * j);
    double block = 0.0;
    for (std::size_t q = 0; q < part->cube_count(); ++q) {
      Piece p{part->cube(q).window_start, &part->cube(q).weight};
      double v;
      if (forcing) {
        v = piece_yj_surrogate(p, sj, mass, h, g0.size(), g0.domain_length, j);
      } else {
        v = pow2(j) * piece_x_norm(p, mass, h, g0.size(), g0.domain_length) +
            piece_linfty_l2(p, sj, h);
      }
      b.rows.push_back({j, q, v});
      block += v;
    }
    total_sq += pow2(2.0 * s * j) * block * block;
  }
  b.total = std::sqrt(total_sq);
  return b;
}

}  // namespace

NormBreakdown l1xs_breakdown(const SpaceTimeFunction& u, double s) {
  return graded_st_breakdown(u, s, false);
}

NormBreakdown l1ys_breakdown(const SpaceTimeFunction& f, double s) {
  return graded_st_breakdown(f, s, true);
}

double l1xs_norm(const SpaceTimeFunction& u, double s) {
  return l1xs_breakdown(u, s).total;
}

double l1ys_norm(const SpaceTimeFunction& f, double s) {
  return l1ys_breakdown(f, s).total;
}

}  // namespace kdvlab
