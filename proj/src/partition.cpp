#include "kdvlab/partition.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

#include "kdvlab/cutoff.hpp"

namespace kdvlab {
namespace {

// Edge ramp with crossover at the cube edge: 0 at d <= -tau, 1/2 at d = 0,
// 1 at d >= tau.  Two neighbours sharing an edge sum to exactly 1 across it
// because sigma(t) + sigma(1-t) = 1.
double edge_ramp(double d, double tau) {
  return cutoff::sigma_profile(0.5 + 0.5 * d / tau);
}

}  // namespace

DyadicPartition::DyadicPartition(std::size_t grid_n, double domain_length,
                                 int scale_exponent, double tau)
    : grid_n_(grid_n),
      domain_length_(domain_length),
      scale_exponent_(scale_exponent),
      tau_(tau) {
  if (scale_exponent < 0) throw ConfigError("negative partition scale exponent");
  if (!(tau > 0.0) || tau > 0.5) throw ConfigError("partition tau must be in (0, 1/2]");
  double target = std::ldexp(1.0, scale_exponent);
  std::size_t count = 1;
  if (target < domain_length)
    count = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(domain_length / target)));
  cube_length_ = domain_length / static_cast<double>(count);
  double h = domain_length / static_cast<double>(grid_n);
  cubes_.resize(count);

  if (count == 1) {
    Cube& c = cubes_[0];
    c.window_start = 0;
    c.weight.assign(grid_n, 1.0);
    c.begin = 0;
    c.end = grid_n;
    c.core_begin = 0;
    c.core_end = grid_n;
    return;
  }
  double tau_eff = std::min(tau, 0.25 * cube_length_);

  std::vector<double> total(grid_n, 0.0);
  for (std::size_t q = 0; q < count; ++q) {
    Cube& c = cubes_[q];
    // Sharp range: x_i in cube q  <=>  floor(i * count / N) == q.
    c.begin = static_cast<std::size_t>((q * grid_n + count - 1) / count);
    c.end = static_cast<std::size_t>(((q + 1) * grid_n + count - 1) / count);
    double a = cube_length_ * static_cast<double>(q);           // left edge - L/2
    double b = cube_length_ * static_cast<double>(q + 1);       // right edge - L/2
    std::ptrdiff_t w0 =
        static_cast<std::ptrdiff_t>(std::floor((a - tau_eff) / h)) - 1;
    std::ptrdiff_t w1 =
        static_cast<std::ptrdiff_t>(std::ceil((b + tau_eff) / h)) + 1;
    c.window_start = w0;
    c.weight.assign(static_cast<std::size_t>(w1 - w0 + 1), 0.0);
    for (std::ptrdiff_t i = w0; i <= w1; ++i) {
      double xi = h * static_cast<double>(i);  // x_i + L/2, unwrapped
      double v = edge_ramp(xi - a, tau_eff) * edge_ramp(b - xi, tau_eff);
      c.weight[static_cast<std::size_t>(i - w0)] = v;
      std::size_t gi = static_cast<std::size_t>(((i % static_cast<std::ptrdiff_t>(grid_n)) +
                                                 static_cast<std::ptrdiff_t>(grid_n)) %
                                                static_cast<std::ptrdiff_t>(grid_n));
      total[gi] += v;
    }
    // Core: distance >= tau_eff inside both edges.
    c.core_begin = static_cast<std::size_t>(std::ceil((a + tau_eff) / h));
    c.core_end = static_cast<std::size_t>(std::floor((b - tau_eff) / h)) + 1;
    if (c.core_begin < c.begin) c.core_begin = c.begin;
    if (c.core_end > c.end) c.core_end = c.end;
  }
  for (std::size_t q = 0; q < count; ++q) {
    Cube& c = cubes_[q];
    for (std::size_t w = 0; w < c.weight.size(); ++w) {
      std::ptrdiff_t i = c.window_start + static_cast<std::ptrdiff_t>(w);
      std::size_t gi = static_cast<std::size_t>(((i % static_cast<std::ptrdiff_t>(grid_n)) +
                                                 static_cast<std::ptrdiff_t>(grid_n)) %
                                                static_cast<std::ptrdiff_t>(grid_n));
      if (total[gi] > 0.0) c.weight[w] /= total[gi];
    }
  }
}

double DyadicPartition::scale_length() const {
  return std::ldexp(1.0, scale_exponent_);
}

double DyadicPartition::unity_defect() const {
  std::vector<double> total(grid_n_, 0.0);
  for (const auto& c : cubes_) {
    for (std::size_t w = 0; w < c.weight.size(); ++w) {
      std::ptrdiff_t i = c.window_start + static_cast<std::ptrdiff_t>(w);
      std::size_t gi = static_cast<std::size_t>(((i % static_cast<std::ptrdiff_t>(grid_n_)) +
                                                 static_cast<std::ptrdiff_t>(grid_n_)) %
                                                static_cast<std::ptrdiff_t>(grid_n_));
      total[gi] += c.weight[w];
    }
  }
  double worst = 0.0;
  for (double t : total) worst = std::max(worst, std::fabs(t - 1.0));
  return worst;
}

namespace {

std::mutex cache_mu;
std::map<std::tuple<std::size_t, std::uint64_t, int, std::uint64_t>,
         std::shared_ptr<const DyadicPartition>>
    cache;

std::uint64_t bits(double x) {
  std::uint64_t b;
  std::memcpy(&b, &x, sizeof b);
  return b;
}

}  // namespace

std::shared_ptr<const DyadicPartition> get_partition(std::size_t grid_n,
                                                     double domain_length,
                                                     int scale_exponent,
                                                     double tau) {
  std::lock_guard<std::mutex> lock(cache_mu);
  auto key = std::make_tuple(grid_n, bits(domain_length), scale_exponent, bits(tau));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto p = std::make_shared<const DyadicPartition>(grid_n, domain_length,
                                                   scale_exponent, tau);
  cache.emplace(key, p);
  return p;
}

int max_scale_exponent(double domain_length) {
  int l = 0;
  while (std::ldexp(1.0, l) < domain_length) ++l;
  return l;
}

}  // namespace kdvlab
