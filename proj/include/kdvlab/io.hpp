#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kdvlab/coefficients.hpp"
#include "kdvlab/grid.hpp"
#include "kdvlab/linear_solver.hpp"
#include "kdvlab/nonlinear_solver.hpp"
#include "kdvlab/norms.hpp"
#include "kdvlab/rescaling.hpp"

namespace kdvlab::io {

// Exact decimal form of a double (%.17g).  Every number in a CSV goes
// through this, so identical runs produce byte-identical files.
std::string format_double(double v);

void ensure_directory(const std::string& dir);
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

// Plot-ready sample table "x,re,im".  The grid is recovered on read from
// the row count and the first abscissa (x_0 = -L/2 exactly, and N is a
// power of two, so L round-trips without error).
void write_grid_csv(const std::string& path, const GridFunction& u);
GridFunction read_grid_csv(const std::string& path);

// Binary form: u64 N, f64 L, then N interleaved (re, im) f64 pairs, all
// little-endian.
void write_grid_binary(const std::string& path, const GridFunction& u);
GridFunction read_grid_binary(const std::string& path);

// u64 slice count, f64 t_start, f64 t_end, then one grid block per slice.
void write_spacetime_binary(const std::string& path,
                            const SpaceTimeFunction& u);
SpaceTimeFunction read_spacetime_binary(const std::string& path);

// "band,cube,contribution" rows under a two-line header naming the norm and
// its total.
void write_breakdown_csv(const std::string& path, const NormBreakdown& b);

// "estimate_id,k,norm,fitted_slope,bound,pass" with one row per (entry, k).
void write_slope_csv(const std::string& path, const SlopeTable& table);

// Two-column series, e.g. an error-vs-time trace.
void write_series_csv(const std::string& path, const std::string& x_name,
                      const std::string& y_name,
                      const std::vector<std::pair<double, double>>& rows);

std::string breakdown_json(const NormBreakdown& b);
std::string slope_json(const SlopeTable& table);
std::string linear_report_json(const LinearSolveReport& r);
std::string solve_report_json(const SolveReport& r);
std::string lipschitz_report_json(const LipschitzReport& r);

// FNV-1a 64-bit content hash; used to fingerprint inputs in run manifests.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64(const std::string& text);
std::string hash_hex(std::uint64_t h);
std::uint64_t hash_file(const std::string& path);

// Frozen-coefficient dump: <dir>/coefficients.json holds the term table
// (alpha, beta, rate) with relative paths to one binary grid per field.
void write_coefficients(const std::string& dir, const FrozenCoefficients& c);

}  // namespace kdvlab::io
