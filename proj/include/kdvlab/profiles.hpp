#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "kdvlab/grid.hpp"

namespace kdvlab {

// Named initial-data profiles evaluated on a periodic grid.  Every profile is
// sampled pointwise and is real-valued; band-limited noise is constructed
// directly in frequency space so its support is exact.

// exp(-(x-x0)^2 / (2 width^2)) * amplitude
GridFunction gaussian_profile(std::size_t n, double length, double amplitude,
                              double width, double x0 = 0.0);

// amplitude * sech((x-x0)/width)
GridFunction sech_profile(std::size_t n, double length, double amplitude,
                          double width, double x0 = 0.0);

// (c/2) sech^2(sqrt(c) (x-x0) / 2): travels right at speed c under
// u_t + 6 u u_x + u_xxx = 0.
GridFunction soliton_profile(std::size_t n, double length, double speed,
                             double x0 = 0.0);

GridFunction soliton_at_time(std::size_t n, double length, double speed,
                             double x0, double t);

// amplitude * cos(xi x + phase) with xi snapped to the nearest grid frequency.
GridFunction plane_wave_profile(std::size_t n, double length, double amplitude,
                                double frequency, double phase = 0.0);

// Real random field with spectrum supported in (2^{j-1}, 2^{j+1}), unit
// amplitude per mode before shaping, seeded deterministically.
GridFunction random_band_profile(std::size_t n, double length, int band,
                                 std::uint64_t seed);

// Real random field with smooth spectral decay 2^{-decay*j}, all bands.
GridFunction random_smooth_profile(std::size_t n, double length, double decay,
                                   std::uint64_t seed);

// Dispatch by name with a parameter map; unknown names or missing parameters
// raise ConfigError.  Recognised names: gaussian, sech, soliton, plane_wave,
// random_band, random_smooth, zero.
GridFunction make_profile(const std::string& name,
                          const std::map<std::string, double>& params,
                          std::size_t n, double length, std::uint64_t seed);

}  // namespace kdvlab
