#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "det3/io.hpp"

using namespace det3;

namespace {

const char* sample =
    "# leading comment\n"
    "[coefficients]\n"
    "preset = box\n"
    "\n"
    "[grid]\n"
    "type = rect\n"
    "re = -1 1 0.5\n"
    "count = 4\n"
    "; trailing comment\n"
    "[tolerances]\n"
    "det_tol = 1e-8\n";

}  // namespace

TEST_CASE("config parsing, typed access, and echo") {
  const Config cfg = Config::parse_string(sample);
  CHECK(cfg.has("grid", "type"));
  CHECK_FALSE(cfg.has("grid", "missing"));
  CHECK(cfg.get("grid", "type") == "rect");
  CHECK(cfg.get_or("grid", "missing", "fallback") == "fallback");
  CHECK(cfg.get_double("tolerances", "det_tol") == Catch::Approx(1e-8));
  CHECK(cfg.get_double_or("tolerances", "other", 2.5) == 2.5);
  CHECK(cfg.get_int_or("grid", "count", 0) == 4);
  const std::vector<double> re = cfg.get_doubles("grid", "re");
  REQUIRE(re.size() == 3);
  CHECK(re[0] == -1.0);
  CHECK(re[2] == 0.5);

  CHECK_THROWS_AS(cfg.get("grid", "missing"), std::out_of_range);
  CHECK_THROWS_AS(cfg.get_double("grid", "type"), std::invalid_argument);

  const std::vector<std::string> echo = cfg.echo_lines();
  REQUIRE_FALSE(echo.empty());
  bool saw = false;
  for (const std::string& l : echo) saw = saw || l.find("grid.type = rect") != std::string::npos;
  CHECK(saw);
}

TEST_CASE("set appends or overwrites while keeping order") {
  Config cfg = Config::parse_string(sample);
  cfg.set("grid", "type", "polar");
  CHECK(cfg.get("grid", "type") == "polar");
  cfg.set("new", "key", "7");
  CHECK(cfg.get("new", "key") == "7");
  const std::vector<std::string> echo = cfg.echo_lines();
  // the overwritten key stays at its original position (before tolerances)
  size_t pos_type = 0, pos_tol = 0;
  for (size_t i = 0; i < echo.size(); ++i) {
    if (echo[i].find("grid.type") != std::string::npos) pos_type = i;
    if (echo[i].find("tolerances.det_tol") != std::string::npos) pos_tol = i;
  }
  CHECK(pos_type < pos_tol);
}

TEST_CASE("coefficients from preset and from explicit pieces") {
  const Config preset = Config::parse_string("[coefficients]\npreset = smooth\n");
  const Coefficients cs = coefficients_from_config(preset);
  CHECK(cs.p0() == Catch::Approx(1.0 / 6.0).epsilon(1e-12));

  const Config pieces = Config::parse_string(
      "[coefficients]\n"
      "gamma = 1\n"
      "p_breaks = 0 1\n"
      "p_coeffs_0 = 0 1 -1\n"
      "q_breaks = 0 0.5 1\n"
      "q_coeffs_0 = 1\n"
      "q_coeffs_1 = -1\n");
  const Coefficients cp = coefficients_from_config(pieces);
  CHECK(cp.p()(0.5) == Catch::Approx(0.25));
  CHECK(cp.q()(0.25) == 1.0);
  CHECK(cp.q()(0.75) == -1.0);
  CHECK(cp.merged_breaks().size() == 3);

  // a discontinuous p must be rejected with the offending field named
  const Config bad = Config::parse_string(
      "[coefficients]\n"
      "gamma = 1\n"
      "p_breaks = 0 0.5 1\n"
      "p_coeffs_0 = 1\n"
      "p_coeffs_1 = -1\n"
      "q_coeffs_0 = 0\n");
  try {
    coefficients_from_config(bad);
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("p") != std::string::npos);
  }
}

TEST_CASE("csv format: echo header then exact numeric rows") {
  Table t;
  t.columns = {"re_k", "im_k", "value"};
  t.rows = {{1.0, -0.5, 3.25}, {2.0, 0.0, -1.0109650102030404}};
  const std::string text = format_table(t, {"a.b = c"}, "csv");
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);
  CHECK(line == "# a.b = c");
  std::getline(is, line);
  CHECK(line == "re_k,im_k,value");
  std::getline(is, line);
  CHECK(line == "1,-0.5,3.25");
  std::getline(is, line);
  // values print round-trip exact: parsing the cell recovers the double bit-for-bit
  const auto comma = line.rfind(',');
  CHECK(line.substr(0, comma + 1) == "2,0,");
  CHECK(std::stod(line.substr(comma + 1)) == -1.0109650102030404);
}

TEST_CASE("notes column appears only when a row carries a reason") {
  Table t;
  t.columns = {"x"};
  t.rows = {{1.0}, {2.0}};
  t.notes = {"", "excluded-kmin"};
  const std::string text = format_table(t, {}, "csv");
  CHECK(text.find("note") != std::string::npos);
  CHECK(text.find("excluded-kmin") != std::string::npos);

  Table plain;
  plain.columns = {"x"};
  plain.rows = {{1.0}};
  CHECK(format_table(plain, {}, "csv").find("note") == std::string::npos);

  Table mismatch;
  mismatch.columns = {"x"};
  mismatch.rows = {{1.0}};
  mismatch.notes = {"a", "b"};
  CHECK_THROWS_AS(format_table(mismatch, {}, "csv"), std::invalid_argument);
}

TEST_CASE("json-like format round-trips through a JSON parser") {
  Table t;
  t.columns = {"re_k", "im_k"};
  t.rows = {{0.25, -3.5}, {1.5, 0.125}};
  const std::string text = format_table(t, {"coefficients.preset = box"}, "json-like");
  const nlohmann::json j = nlohmann::json::parse(text);
  REQUIRE(j.contains("config"));
  REQUIRE(j.contains("rows"));
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][0]["re_k"].get<double>() == 0.25);
  CHECK(j["rows"][1]["im_k"].get<double>() == 0.125);
  CHECK(j["config"][0].get<std::string>() == "coefficients.preset = box");
}

TEST_CASE("write_table is byte-stable across repeated writes") {
  Table t;
  t.columns = {"a", "b"};
  t.rows = {{1.0 / 3.0, 2.0 / 7.0}};
  const std::string p1 = "/tmp/det3_io_test_1.csv";
  const std::string p2 = "/tmp/det3_io_test_2.csv";
  write_table(p1, t, {"x = y"}, "csv");
  write_table(p2, t, {"x = y"}, "csv");
  std::ifstream f1(p1, std::ios::binary), f2(p2, std::ios::binary);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK_FALSE(s1.str().empty());
  std::remove(p1.c_str());
  std::remove(p2.c_str());

  CHECK_THROWS_AS(format_table(t, {}, "xml"), std::invalid_argument);
}

TEST_CASE("unknown preset is rejected") {
  const Config cfg = Config::parse_string("[coefficients]\npreset = gaussian\n");
  CHECK_THROWS_AS(coefficients_from_config(cfg), std::invalid_argument);
}
