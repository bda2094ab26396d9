#include "kdvlab/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kdvlab/errors.hpp"
#include "kdvlab/rational.hpp"

namespace kdvlab::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create directory " + dir + ": " + ec.message());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw ConfigError("write failed: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------
// CSV

void write_grid_csv(const std::string& path, const GridFunction& u) {
  std::ostringstream out;
  out << "x,re,im\n";
  for (std::size_t i = 0; i < u.size(); ++i) {
    out << format_double(u.x(i)) << ',' << format_double(u.samples[i].real())
        << ',' << format_double(u.samples[i].imag()) << '\n';
  }
  write_text(path, out.str());
}

GridFunction read_grid_csv(const std::string& path) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line) || line != "x,re,im")
    throw ConfigError(path + ": missing x,re,im header");
  std::vector<Complex> values;
  double x0 = 0.0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double x, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &re, &im) != 3)
      throw ConfigError(path + ": malformed row '" + line + "'");
    if (values.empty()) x0 = x;
    values.emplace_back(re, im);
  }
  // The first sample sits at -L/2; halving is exact in binary.
  GridFunction u(values.size(), -2.0 * x0);
  u.samples = std::move(values);
  return u;
}

void write_breakdown_csv(const std::string& path, const NormBreakdown& b) {
  std::ostringstream out;
  out << "# norm=" << b.norm_id << " exponent=" << format_double(b.exponent)
      << " total=" << format_double(b.total) << '\n';
  out << "band,cube,contribution\n";
  for (const auto& row : b.rows) {
    out << row.band << ',' << row.cube << ','
        << format_double(row.contribution) << '\n';
  }
  write_text(path, out.str());
}

void write_slope_csv(const std::string& path, const SlopeTable& table) {
  std::ostringstream out;
  out << "estimate_id,k,norm,fitted_slope,bound,pass\n";
  for (const auto& e : table.entries) {
    for (std::size_t i = 0; i < e.ks.size(); ++i) {
      out << e.estimate_id << ',' << e.ks[i] << ','
          << format_double(e.norms[i]) << ',' << format_double(e.fitted_slope)
          << ',' << format_double(e.bound) << ','
          << (e.skipped ? "skip" : (e.pass ? "pass" : "fail")) << '\n';
    }
  }
  write_text(path, out.str());
}

void write_series_csv(const std::string& path, const std::string& x_name,
                      const std::string& y_name,
                      const std::vector<std::pair<double, double>>& rows) {
  std::ostringstream out;
  out << x_name << ',' << y_name << '\n';
  for (const auto& [x, y] : rows)
    out << format_double(x) << ',' << format_double(y) << '\n';
  write_text(path, out.str());
}

// ---------------------------------------------------------------------------
// Binary grids

namespace {

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

struct Cursor {
  const std::string& data;
  std::size_t pos = 0;
  explicit Cursor(const std::string& d) : data(d) {}
  std::uint64_t u64() {
    if (pos + 8 > data.size()) throw ConfigError("truncated binary grid file");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= std::uint64_t(static_cast<unsigned char>(data[pos + i])) << (8 * i);
    pos += 8;
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
};

void append_grid(std::string& out, const GridFunction& u) {
  put_u64(out, u.size());
  put_f64(out, u.domain_length);
  for (const auto& v : u.samples) {
    put_f64(out, v.real());
    put_f64(out, v.imag());
  }
}

GridFunction take_grid(Cursor& c) {
  const std::uint64_t n = c.u64();
  if (n < 8 || n > (1u << 30)) throw ConfigError("implausible grid size in binary file");
  GridFunction u(static_cast<std::size_t>(n), c.f64());
  for (auto& v : u.samples) {
    const double re = c.f64();
    const double im = c.f64();
    v = Complex(re, im);
  }
  return u;
}

}  // namespace

void write_grid_binary(const std::string& path, const GridFunction& u) {
  std::string out;
  out.reserve(16 + 16 * u.size());
  append_grid(out, u);
  write_text(path, out);
}

GridFunction read_grid_binary(const std::string& path) {
  const std::string data = read_text(path);
  Cursor c(data);
  return take_grid(c);
}

void write_spacetime_binary(const std::string& path,
                            const SpaceTimeFunction& u) {
  std::string out;
  put_u64(out, u.slices.size());
  put_f64(out, u.t_start);
  put_f64(out, u.t_end);
  for (const auto& s : u.slices) append_grid(out, s);
  write_text(path, out);
}

SpaceTimeFunction read_spacetime_binary(const std::string& path) {
  const std::string data = read_text(path);
  Cursor c(data);
  SpaceTimeFunction u;
  const std::uint64_t count = c.u64();
  u.t_start = c.f64();
  u.t_end = c.f64();
  u.slices.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) u.slices.push_back(take_grid(c));
  u.validate();
  return u;
}

// ---------------------------------------------------------------------------
// JSON reports

namespace {

json slope_entry_json(const SlopeEntry& e) {
  json j;
  j["estimate_id"] = e.estimate_id;
  j["k"] = e.ks;
  j["norms"] = e.norms;
  j["fitted_slope"] = e.fitted_slope;
  j["bound"] = e.bound;
  j["pass"] = e.pass;
  j["skipped"] = e.skipped;
  return j;
}

}  // namespace

std::string breakdown_json(const NormBreakdown& b) {
  json j;
  j["norm_id"] = b.norm_id;
  j["exponent"] = b.exponent;
  j["total"] = b.total;
  json rows = json::array();
  for (const auto& r : b.rows)
    rows.push_back({{"band", r.band}, {"cube", r.cube}, {"contribution", r.contribution}});
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string slope_json(const SlopeTable& table) {
  json j;
  j["all_pass"] = table.all_pass();
  json entries = json::array();
  for (const auto& e : table.entries) entries.push_back(slope_entry_json(e));
  j["entries"] = std::move(entries);
  return j.dump(2) + "\n";
}

std::string linear_report_json(const LinearSolveReport& r) {
  json j;
  j["residual_norms"] = r.residual_norms;
  j["ratios"] = r.ratios;
  j["solution_norm"] = r.solution_norm;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  return j.dump(2) + "\n";
}

std::string solve_report_json(const SolveReport& r) {
  json j;
  j["k"] = r.k;
  j["lambda"] = r.lambda;
  j["sigma0"] = r.sigma0;
  j["s0"] = r.s0;
  j["delta1"] = r.delta1;
  j["sigma"] = r.sigma;
  j["data_norm"] = r.data_norm;
  j["ball_radius"] = r.ball_radius;
  j["picard_diffs"] = r.picard_diffs;
  j["iterate_norms"] = r.iterate_norms;
  j["total_linear_iterations"] = r.total_linear_iterations;
  j["fixed_point_residual"] = r.fixed_point_residual;
  j["pde_residual_max"] = r.pde_residual_max;
  j["t_end"] = r.t_end;
  j["time_intervals"] = r.time_intervals;
  j["converged"] = r.converged;
  return j.dump(2) + "\n";
}

std::string lipschitz_report_json(const LipschitzReport& r) {
  json j;
  j["k"] = r.k;
  j["data_difference"] = r.data_difference;
  j["solution_difference"] = r.solution_difference;
  j["ratio"] = r.ratio;
  j["exact_match"] = r.exact_match;
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Hashing

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t fnv1a64(const std::string& text) {
  return fnv1a64(text.data(), text.size());
}

std::string hash_hex(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t hash_file(const std::string& path) {
  return fnv1a64(read_text(path));
}

// ---------------------------------------------------------------------------
// Coefficient dump

namespace {

json term_json(const CoefficientTerm& t, const std::string& field_file) {
  json j;
  j["alpha"] = t.alpha;
  j["beta"] = t.beta;
  j["rate"] = t.rate.str();
  j["field"] = field_file;
  return j;
}

}  // namespace

void write_coefficients(const std::string& dir, const FrozenCoefficients& c) {
  ensure_directory(dir);
  json manifest;
  manifest["k"] = c.k;
  write_grid_binary(dir + "/a.grid", c.a);
  manifest["a"] = "a.grid";
  write_grid_binary(dir + "/r.grid", c.r);
  manifest["r"] = "r.grid";
  json g = json::array(), l = json::array();
  for (std::size_t i = 0; i < c.g_terms.size(); ++i) {
    const std::string file = "g" + std::to_string(i) + ".grid";
    write_grid_binary(dir + "/" + file, c.g_terms[i].field);
    g.push_back(term_json(c.g_terms[i], file));
  }
  for (std::size_t i = 0; i < c.l_terms.size(); ++i) {
    const std::string file = "l" + std::to_string(i) + ".grid";
    write_grid_binary(dir + "/" + file, c.l_terms[i].field);
    l.push_back(term_json(c.l_terms[i], file));
  }
  manifest["g_terms"] = std::move(g);
  manifest["l_terms"] = std::move(l);
  write_text(dir + "/coefficients.json", manifest.dump(2) + "\n");
}

}  // namespace kdvlab::io
