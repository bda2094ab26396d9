#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "kdvlab/grid.hpp"
#include "kdvlab/nonlinear_solver.hpp"
#include "kdvlab/nonlinearity.hpp"
#include "kdvlab/oracle.hpp"

namespace kdvlab {

// Parsed and validated run description.  Schema (JSON):
//   {
//     "grid":         {"N": <power of two >= 8>, "L": <positive>},
//     "nonlinearity": {"terms": [{"c": number | [re, im],
//                                 "alpha": [a0, a1, a2]}, ...]},
//     "data":         {"profile": <name>, "params": {...}, "seed": <u64>},
//     "solver":       {"s": number, "k": int | "auto", "tol", "sigma",
//                      "max_picard", "time_intervals", "k_max",
//                      "linear_max_iter", "linear_tol"},
//     "oracle":       {"substeps_per_unit", "output_intervals", "scheme"},
//     "outputs":      {"dir": <path>}
//   }
// grid, nonlinearity, data and solver.s are required; everything else has
// defaults.  Unknown keys anywhere are rejected with their field path, and
// solver.s must exceed the minimal regularity s0 of the configured equation.
struct RunConfig {
  std::size_t grid_n = 0;
  double grid_length = 0.0;
  Nonlinearity equation;
  std::string profile;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  SolverConfig solver;
  OracleConfig oracle;
  std::string out_dir = "out";
  std::string echo;  // parsed config re-serialized (canonical key order)
};

RunConfig parse_config_text(const std::string& text, const std::string& origin);
RunConfig parse_config(const std::string& path);

// Samples the configured data profile on the configured grid.
GridFunction make_initial_data(const RunConfig& rc);

}  // namespace kdvlab
