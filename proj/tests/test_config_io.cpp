#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "helpers.hpp"
#include "kdvlab/config.hpp"
#include "kdvlab/errors.hpp"
#include "kdvlab/io.hpp"
#include "kdvlab/profiles.hpp"

using namespace kdvlab;
using testutil::random_grid;

namespace {

std::string tmpdir(const std::string& tag) {
  const std::string dir = "io_test_" + tag;
  io::ensure_directory(dir);
  return dir;
}

const char* kMinimalConfig = R"({
  "grid": {"N": 256, "L": 16.0},
  "nonlinearity": {"terms": [{"c": -6.0, "alpha": [1, 1, 0]}]},
  "data": {"profile": "random_band", "params": {"band": 2}, "seed": 7},
  "solver": {"s": 2.0}
})";

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("decimal formatting round-trips doubles exactly") {
  for (double v : {1.0 / 3.0, 1e-17, -2.5e300, 0.1 + 0.2, 0.0, 6.25e-2}) {
    const std::string text = io::format_double(v);
    CHECK(std::stod(text) == v);
  }
}

TEST_CASE("content hash matches the published reference vectors") {
  CHECK(io::hash_hex(io::fnv1a64(std::string(""))) == "cbf29ce484222325");
  CHECK(io::hash_hex(io::fnv1a64(std::string("a"))) == "af63dc4c8601ec8c");
  CHECK(io::hash_hex(io::fnv1a64(std::string("foobar"))) == "85944171f73967e8");
}

TEST_CASE("grid files round-trip bit for bit") {
  const std::string dir = tmpdir("grid");
  GridFunction u = random_grid(64, 16.0, 17);

  io::write_grid_csv(dir + "/u.csv", u);
  GridFunction back = io::read_grid_csv(dir + "/u.csv");
  REQUIRE(back.size() == u.size());
  CHECK(back.domain_length == u.domain_length);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(back.samples[i] == u.samples[i]);

  io::write_grid_binary(dir + "/u.grid", u);
  GridFunction bin = io::read_grid_binary(dir + "/u.grid");
  REQUIRE(bin.size() == u.size());
  CHECK(bin.domain_length == u.domain_length);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(bin.samples[i] == u.samples[i]);

  io::write_text(dir + "/broken.csv", "x,re,im\n1.0,2.0\n");
  CHECK_THROWS_AS(io::read_grid_csv(dir + "/broken.csv"), ConfigError);
}

TEST_CASE("space-time files round-trip bit for bit") {
  const std::string dir = tmpdir("st");
  SpaceTimeFunction st;
  st.t_start = 0.25;
  st.t_end = 0.75;
  for (int i = 0; i < 6; ++i)
    st.slices.push_back(random_grid(32, 8.0, 100 + static_cast<std::uint64_t>(i)));
  io::write_spacetime_binary(dir + "/u.stbin", st);
  SpaceTimeFunction back = io::read_spacetime_binary(dir + "/u.stbin");
  CHECK(back.t_start == st.t_start);
  CHECK(back.t_end == st.t_end);
  REQUIRE(back.slices.size() == st.slices.size());
  for (std::size_t i = 0; i < st.slices.size(); ++i)
    for (std::size_t p = 0; p < st.slices[i].size(); ++p)
      CHECK(back.slices[i].samples[p] == st.slices[i].samples[p]);
}

TEST_CASE("minimal configuration parses with defaults") {
  RunConfig rc = parse_config_text(kMinimalConfig, "test");
  CHECK(rc.grid_n == 256);
  CHECK(rc.grid_length == 16.0);
  CHECK(rc.equation.terms.size() == 1);
  CHECK(rc.equation.terms[0].coefficient == Complex(-6.0, 0.0));
  CHECK(rc.profile == "random_band");
  CHECK(rc.seed == 7);
  CHECK(rc.solver.s == 2.0);
  CHECK(rc.solver.k == -1);  // automatic
  CHECK(rc.out_dir == "out");

  // The echo is canonical: parsing it again reproduces the same settings.
  RunConfig again = parse_config_text(rc.echo, "echo");
  CHECK(again.grid_n == rc.grid_n);
  CHECK(again.seed == rc.seed);
  CHECK(again.solver.s == rc.solver.s);
  CHECK(again.echo == rc.echo);
}

TEST_CASE("unknown keys are rejected with their field path") {
  std::string msg = message_of([] {
    parse_config_text(R"({"grud": {}, "grid": {"N": 256, "L": 16.0},
      "nonlinearity": {"terms": [{"c": 1.0, "alpha": [2, 0, 0]}]},
      "data": {"profile": "zero"}, "solver": {"s": 1.0}})",
                      "test");
  });
  CHECK(msg.find("grud") != std::string::npos);

  msg = message_of([] {
    parse_config_text(R"({"grid": {"N": 256, "L": 16.0},
      "nonlinearity": {"terms": [{"c": 1.0, "alpha": [2, 0, 0]}]},
      "data": {"profile": "zero"}, "solver": {"s": 1.0, "tolx": 1e-9}})",
                      "test");
  });
  CHECK(msg.find("tolx") != std::string::npos);
  CHECK(msg.find("solver") != std::string::npos);
}

TEST_CASE("malformed monomials name the offending field") {
  std::string msg = message_of([] {
    parse_config_text(R"({"grid": {"N": 256, "L": 16.0},
      "nonlinearity": {"terms": [{"c": 1.0, "alpha": [1, "x", 0]}]},
      "data": {"profile": "zero"}, "solver": {"s": 1.0}})",
                      "test");
  });
  CHECK(msg.find("alpha") != std::string::npos);

  msg = message_of([] {
    parse_config_text(R"({"grid": {"N": 256, "L": 16.0},
      "nonlinearity": {"terms": [{"c": 1.0, "alpha": [1, 0]}]},
      "data": {"profile": "zero"}, "solver": {"s": 1.0}})",
                      "test");
  });
  CHECK(msg.find("alpha") != std::string::npos);
}

TEST_CASE("regularity below the admissible floor is rejected by name") {
  std::string msg = message_of([] {
    parse_config_text(R"({"grid": {"N": 256, "L": 16.0},
      "nonlinearity": {"terms": [{"c": 1.0, "alpha": [0, 0, 2]}]},
      "data": {"profile": "zero"}, "solver": {"s": 4.5}})",
                      "test");
  });
  CHECK(msg.find("9/2") != std::string::npos);

  CHECK_NOTHROW(
      parse_config_text(R"({"grid": {"N": 256, "L": 16.0},
      "nonlinearity": {"terms": [{"c": 1.0, "alpha": [0, 0, 2]}]},
      "data": {"profile": "zero"}, "solver": {"s": 4.6}})",
                        "test"));
}

TEST_CASE("grid constraints are enforced at parse time") {
  auto cfg = [](const std::string& grid) {
    return std::string(R"({"grid": )") + grid +
           R"(, "nonlinearity": {"terms": [{"c": 1.0, "alpha": [2, 0, 0]}]},
           "data": {"profile": "zero"}, "solver": {"s": 1.0}})";
  };
  CHECK_THROWS_AS(parse_config_text(cfg(R"({"N": 100, "L": 16.0})"), "t"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(cfg(R"({"N": 4, "L": 16.0})"), "t"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(cfg(R"({"N": 256, "L": -2.0})"), "t"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(cfg(R"({"N": 256})"), "t"), ConfigError);
  CHECK_NOTHROW(parse_config_text(cfg(R"({"N": 256, "L": 16.0})"), "t"));
}

TEST_CASE("identical configuration and seed reproduce artifacts byte for byte") {
  const std::string dir = tmpdir("determinism");
  RunConfig rc1 = parse_config_text(kMinimalConfig, "a");
  RunConfig rc2 = parse_config_text(kMinimalConfig, "b");
  GridFunction u1 = make_initial_data(rc1);
  GridFunction u2 = make_initial_data(rc2);
  REQUIRE(u1.size() == u2.size());
  for (std::size_t i = 0; i < u1.size(); ++i) CHECK(u1.samples[i] == u2.samples[i]);

  io::write_grid_csv(dir + "/a.csv", u1);
  io::write_grid_csv(dir + "/b.csv", u2);
  CHECK(io::read_text(dir + "/a.csv") == io::read_text(dir + "/b.csv"));

  // A different seed must change the data.
  RunConfig rc3 = rc1;
  rc3.seed = 8;
  GridFunction u3 = make_initial_data(rc3);
  CHECK(max_abs(u3 - u1) > 0.0);
}

TEST_CASE("frozen-coefficient dumps reload exactly") {
  const std::string dir = tmpdir("coeffs");
  FrozenCoefficients c;
  c.k = 3;
  c.a = random_grid(32, 8.0, 41);
  c.r = random_grid(32, 8.0, 42);
  c.g_terms.push_back({{1, 0, 1}, {1, 0, 1}, Rational(0), random_grid(32, 8.0, 43)});
  c.l_terms.push_back({{1, 0, 1}, {1, 0, 0}, Rational(-1, 2), random_grid(32, 8.0, 44)});
  io::write_coefficients(dir, c);

  nlohmann::json j = nlohmann::json::parse(io::read_text(dir + "/coefficients.json"));
  CHECK(j["k"] == 3);
  GridFunction a = io::read_grid_binary(dir + "/" + j["a"].get<std::string>());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.samples[i] == c.a.samples[i]);
  REQUIRE(j["g_terms"].size() == 1);
  CHECK(j["g_terms"][0]["rate"] == "0");
  CHECK(j["l_terms"][0]["rate"] == "-1/2");
  GridFunction g0 =
      io::read_grid_binary(dir + "/" + j["g_terms"][0]["field"].get<std::string>());
  for (std::size_t i = 0; i < g0.size(); ++i)
    CHECK(g0.samples[i] == c.g_terms[0].field.samples[i]);
}

TEST_CASE("series and slope tables carry their headers") {
  const std::string dir = tmpdir("series");
  io::write_series_csv(dir + "/s.csv", "t", "value", {{0.0, 1.0}, {0.5, 2.0}});
  const std::string text = io::read_text(dir + "/s.csv");
  CHECK(text.rfind("t,value\n", 0) == 0);
  CHECK(text.find("0.5,2") != std::string::npos);

  SlopeTable table;
  table.entries.push_back({"demo", {1, 2}, {0.5, 0.25}, -1.0, 0.0, true, false});
  io::write_slope_csv(dir + "/slopes.csv", table);
  const std::string slopes = io::read_text(dir + "/slopes.csv");
  CHECK(slopes.rfind("estimate_id,k,norm,fitted_slope,bound,pass\n", 0) == 0);
  CHECK(slopes.find("demo") != std::string::npos);
}
