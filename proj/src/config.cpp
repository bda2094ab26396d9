#include "kdvlab/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "kdvlab/errors.hpp"
#include "kdvlab/io.hpp"
#include "kdvlab/profiles.hpp"
#include "kdvlab/rational.hpp"

namespace kdvlab {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config: " + path + ": " + what);
}

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) fail(path + "." + item.key(), "unknown key");
  }
}

const json& require(const json& obj, const std::string& key,
                    const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required key");
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

long as_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<long>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

double get_number(const json& obj, const std::string& key,
                  const std::string& path, double fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : as_number(*it, path + "." + key);
}

long get_integer(const json& obj, const std::string& key,
                 const std::string& path, long fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : as_integer(*it, path + "." + key);
}

Complex parse_coefficient(const json& v, const std::string& path) {
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return Complex(v[0].get<double>(), v[1].get<double>());
  fail(path, "expected a number or [re, im] pair");
}

std::array<int, 3> parse_alpha(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3)
    fail(path, "expected a triple [a0, a1, a2]");
  std::array<int, 3> alpha{};
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string slot = path + "[" + std::to_string(i) + "]";
    long a = as_integer(v[i], slot);
    if (a < 0) fail(slot, "orders must be >= 0");
    if (a > 16) fail(slot, "order is implausibly large");
    alpha[i] = static_cast<int>(a);
  }
  return alpha;
}

void parse_grid(const json& g, RunConfig& rc) {
  check_keys(g, "grid", {"N", "L"});
  long n = as_integer(require(g, "N", "grid"), "grid.N");
  if (n < 8 || (n & (n - 1)) != 0)
    fail("grid.N", "must be a power of two and at least 8");
  rc.grid_n = static_cast<std::size_t>(n);
  rc.grid_length = as_number(require(g, "L", "grid"), "grid.L");
  if (!(rc.grid_length > 0.0)) fail("grid.L", "must be positive");
}

void parse_nonlinearity(const json& f, RunConfig& rc) {
  check_keys(f, "nonlinearity", {"terms"});
  const json& terms = require(f, "terms", "nonlinearity");
  if (!terms.is_array() || terms.empty())
    fail("nonlinearity.terms", "expected a nonempty array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string path = "nonlinearity.terms[" + std::to_string(i) + "]";
    check_keys(terms[i], path, {"c", "alpha"});
    Term t;
    t.coefficient = parse_coefficient(require(terms[i], "c", path), path + ".c");
    t.alpha = parse_alpha(require(terms[i], "alpha", path), path + ".alpha");
    rc.equation.terms.push_back(t);
  }
  try {
    rc.equation.validate();
  } catch (const ConfigError& e) {
    fail("nonlinearity.terms", e.what());
  }
}

void parse_data(const json& d, RunConfig& rc) {
  check_keys(d, "data", {"profile", "params", "seed"});
  rc.profile = as_string(require(d, "profile", "data"), "data.profile");
  static const std::set<std::string> known = {
      "gaussian", "sech",        "soliton",       "plane_wave",
      "zero",     "random_band", "random_smooth",
  };
  if (!known.count(rc.profile)) fail("data.profile", "unknown profile '" + rc.profile + "'");
  if (auto it = d.find("params"); it != d.end()) {
    if (!it->is_object()) fail("data.params", "expected an object");
    for (const auto& item : it->items())
      rc.params[item.key()] =
          as_number(item.value(), "data.params." + item.key());
  }
  if (auto it = d.find("seed"); it != d.end()) {
    if (!it->is_number_unsigned() && !it->is_number_integer())
      fail("data.seed", "expected an unsigned integer");
    long long seed = it->get<long long>();
    if (seed < 0) fail("data.seed", "expected an unsigned integer");
    rc.seed = static_cast<std::uint64_t>(seed);
  }
}

void parse_solver(const json& s, RunConfig& rc) {
  check_keys(s, "solver",
             {"s", "k", "sigma", "tol", "max_picard", "time_intervals",
              "k_max", "linear_max_iter", "linear_tol"});
  rc.solver.s = as_number(require(s, "s", "solver"), "solver.s");
  if (auto it = s.find("k"); it != s.end()) {
    if (it->is_string()) {
      if (it->get<std::string>() != "auto")
        fail("solver.k", "expected an integer or \"auto\"");
      rc.solver.k = -1;
    } else {
      long k = as_integer(*it, "solver.k");
      if (k < 0) fail("solver.k", "must be >= 0 (or \"auto\")");
      rc.solver.k = static_cast<int>(k);
    }
  }
  rc.solver.sigma = get_number(s, "sigma", "solver", rc.solver.sigma);
  if (rc.solver.sigma < 0.0) fail("solver.sigma", "must be >= 0");
  rc.solver.tol = get_number(s, "tol", "solver", rc.solver.tol);
  if (!(rc.solver.tol > 0.0)) fail("solver.tol", "must be positive");
  rc.solver.max_picard = static_cast<int>(
      get_integer(s, "max_picard", "solver", rc.solver.max_picard));
  if (rc.solver.max_picard < 1) fail("solver.max_picard", "must be >= 1");
  rc.solver.time_intervals = static_cast<int>(
      get_integer(s, "time_intervals", "solver", rc.solver.time_intervals));
  if (rc.solver.time_intervals < 4)
    fail("solver.time_intervals", "must be >= 4");
  rc.solver.k_max =
      static_cast<int>(get_integer(s, "k_max", "solver", rc.solver.k_max));
  if (rc.solver.k_max < 0) fail("solver.k_max", "must be >= 0");
  rc.solver.linear_max_iter = static_cast<int>(get_integer(
      s, "linear_max_iter", "solver", rc.solver.linear_max_iter));
  if (rc.solver.linear_max_iter < 1)
    fail("solver.linear_max_iter", "must be >= 1");
  rc.solver.linear_tol =
      get_number(s, "linear_tol", "solver", rc.solver.linear_tol);
  if (!(rc.solver.linear_tol > 0.0)) fail("solver.linear_tol", "must be positive");
}

void parse_oracle(const json& o, RunConfig& rc) {
  check_keys(o, "oracle", {"substeps_per_unit", "output_intervals", "scheme"});
  rc.oracle.substeps_per_unit = static_cast<int>(get_integer(
      o, "substeps_per_unit", "oracle", rc.oracle.substeps_per_unit));
  rc.oracle.output_intervals = static_cast<int>(get_integer(
      o, "output_intervals", "oracle", rc.oracle.output_intervals));
  if (auto it = o.find("scheme"); it != o.end())
    rc.oracle.scheme = as_string(*it, "oracle.scheme");
  try {
    rc.oracle.validate();
  } catch (const ConfigError& e) {
    fail("oracle", e.what());
  }
}

}  // namespace

RunConfig parse_config_text(const std::string& text,
                            const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + origin + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: " + origin + ": expected a JSON object");
  check_keys(j, origin,
             {"grid", "nonlinearity", "data", "solver", "oracle", "outputs"});

  RunConfig rc;
  parse_grid(require(j, "grid", origin), rc);
  parse_nonlinearity(require(j, "nonlinearity", origin), rc);
  parse_data(require(j, "data", origin), rc);
  parse_solver(require(j, "solver", origin), rc);
  if (auto it = j.find("oracle"); it != j.end()) parse_oracle(*it, rc);
  if (auto it = j.find("outputs"); it != j.end()) {
    check_keys(*it, "outputs", {"dir"});
    if (auto d = it->find("dir"); d != it->end())
      rc.out_dir = as_string(*d, "outputs.dir");
  }

  // The pipeline's regularity floor: anything at or below s0 is outside the
  // well-posedness range of the configured equation.
  const Rational floor = s0(rc.equation);
  if (!(rc.solver.s > floor.value()))
    fail("solver.s",
         "must exceed the minimal regularity s0 = " + floor.str() +
             " of the configured nonlinearity");

  rc.echo = j.dump(2) + "\n";
  return rc;
}

RunConfig parse_config(const std::string& path) {
  return parse_config_text(io::read_text(path), path);
}

GridFunction make_initial_data(const RunConfig& rc) {
  return make_profile(rc.profile, rc.params, rc.grid_n, rc.grid_length,
                      rc.seed);
}

}  // namespace kdvlab
