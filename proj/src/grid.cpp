#include "kdvlab/grid.hpp"

#include <cmath>

namespace kdvlab {

bool same_grid(const GridFunction& a, const GridFunction& b) {
  return a.size() == b.size() && a.domain_length == b.domain_length;
}

void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (!same_grid(a, b)) throw ConfigError("grid mismatch between operands");
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b);
  GridFunction r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r.samples[i] += b.samples[i];
  return r;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b);
  GridFunction r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r.samples[i] -= b.samples[i];
  return r;
}

GridFunction operator*(Complex c, const GridFunction& a) {
  GridFunction r = a;
  for (auto& v : r.samples) v *= c;
  return r;
}

GridFunction operator*(double c, const GridFunction& a) {
  return Complex(c, 0.0) * a;
}

GridFunction pointwise(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b);
  GridFunction r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r.samples[i] *= b.samples[i];
  return r;
}

double max_abs(const GridFunction& a) {
  double m = 0.0;
  for (const auto& v : a.samples) m = std::max(m, std::abs(v));
  return m;
}

double l2_norm(const GridFunction& a) {
  double s = 0.0;
  for (const auto& v : a.samples) s += std::norm(v);
  return std::sqrt(a.spacing() * s);
}

Complex mean_value(const GridFunction& a) {
  Complex s(0.0, 0.0);
  for (const auto& v : a.samples) s += v;
  return s / static_cast<double>(a.size());
}

double mean_value_real(const GridFunction& a) { return mean_value(a).real(); }

double Spectrum::xi(std::size_t slot) const {
  return 2.0 * M_PI * static_cast<double>(freq_index(slot)) / domain_length;
}

double realness_defect(const GridFunction& a) {
  double scale = max_abs(a);
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (const auto& v : a.samples) worst = std::max(worst, std::abs(v.imag()));
  return worst / scale;
}

SpaceTimeFunction st_constant(const GridFunction& u, std::size_t intervals,
                              double t_start, double t_end) {
  SpaceTimeFunction f;
  f.slices.assign(intervals + 1, u);
  f.t_start = t_start;
  f.t_end = t_end;
  f.validate();
  return f;
}

SpaceTimeFunction operator+(const SpaceTimeFunction& a, const SpaceTimeFunction& b) {
  if (a.slices.size() != b.slices.size())
    throw ConfigError("time slice count mismatch");
  SpaceTimeFunction r = a;
  for (std::size_t j = 0; j < r.slices.size(); ++j)
    r.slices[j] = r.slices[j] + b.slices[j];
  return r;
}

SpaceTimeFunction operator-(const SpaceTimeFunction& a, const SpaceTimeFunction& b) {
  if (a.slices.size() != b.slices.size())
    throw ConfigError("time slice count mismatch");
  SpaceTimeFunction r = a;
  for (std::size_t j = 0; j < r.slices.size(); ++j)
    r.slices[j] = r.slices[j] - b.slices[j];
  return r;
}

SpaceTimeFunction operator*(double c, const SpaceTimeFunction& a) {
  SpaceTimeFunction r = a;
  for (auto& s : r.slices) s = c * s;
  return r;
}

}  // namespace kdvlab
