#include <doctest.h>

#include <sstream>
#include <string>

#include "uavjam/scenario.hpp"

using namespace uavjam;

namespace {

constexpr const char* kHeightOffsetSweep = R"({
  "mode": "analytic",
  "network": { "ell_r": 340, "lambda_e": 5e-7 },
  "sweep": {
    "z_u": [0, 100, 200],
    "d_tu": { "from": 0, "to": 600, "step": 10 }
  }
})";

std::string table(const Scenario& s) {
  std::ostringstream os;
  write_csv(os, s, run_scenario(s));
  return os.str();
}

bool mentions(const std::vector<Violation>& report, const std::string& field,
              const std::string& rule = "") {
  for (const auto& v : report) {
    if (v.field == field && (rule.empty() || v.rule == rule)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("validation") {
  CHECK(validate_config("{}").empty());
  CHECK(validate_config(kHeightOffsetSweep).empty());
  CHECK(mentions(validate_config(R"({"environment": {"alpha_nlos": 1.5}})"),
                 "environment.alpha_nlos", "alpha_nlos >= 2"));
  CHECK(mentions(validate_config(R"({"network": {"lambda_e": -1e-7}})"),
                 "network.lambda_e"));
  CHECK(mentions(validate_config(R"({"network": {"colour": 1}})"), "network.colour",
                 "unknown key"));
  CHECK(mentions(validate_config(R"({"sweep": {"d_tu": [10, -5]}})"), "placement.d_tu"));
  CHECK(mentions(validate_config(R"({"sweep": {"wind": [1]}})"), "sweep.wind"));
  CHECK(mentions(validate_config("{ not json"), "<document>"));
  const auto several = validate_config(
      R"({"mode": "draw", "environment": {"alpha_nlos": 1.5}, "network": {"lambda_e": -1}})");
  CHECK(several.size() >= 3);
}

TEST_CASE("height by offset sweep") {
  std::vector<Violation> report;
  const auto s = parse_scenario(kHeightOffsetSweep, report);
  REQUIRE(s);
  CHECK(row_count(*s) == 183);
  const auto rows = run_scenario(*s);
  REQUIRE(rows.size() == 183);
  for (const auto& r : rows) {
    CHECK(r.error.empty());
    REQUIRE(r.p_se);
    CHECK(*r.p_se >= 0.0);
    CHECK(*r.p_se <= 1.0);
    CHECK(!r.mc_mean);
  }
  CHECK(rows[0].axis_values == std::vector<double>{0.0, 0.0});
  CHECK(rows[61].axis_values == std::vector<double>{100.0, 0.0});
}

TEST_CASE("manifest round trip and determinism") {
  std::vector<Violation> report;
  auto s = parse_scenario(R"({
    "mode": "simulate",
    "placement": {"d_tu": 200, "z_u": 100},
    "sweep": {"lambda_e": [5e-7, 7e-7]},
    "monte_carlo": {"realizations": 3000, "seed": 99}
  })", report);
  REQUIRE(s);
  const std::string first = table(*s);
  CHECK(first == table(*s));
  const auto again = parse_scenario(manifest_json(*s), report);
  REQUIRE(report.empty());
  REQUIRE(again);
  CHECK(table(*again) == first);
  CHECK(manifest_json(*again) == manifest_json(*s));
}

TEST_CASE("compare mode flags agreement") {
  std::vector<Violation> report;
  const auto s = parse_scenario(R"({
    "mode": "compare",
    "placement": {"d_tu": 200, "z_u": 100},
    "monte_carlo": {"realizations": 200000, "seed": 7}
  })", report);
  REQUIRE(s);
  const auto rows = run_scenario(*s);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].check == "PASS");
}

TEST_CASE("optimize mode, jammer field") {
  std::vector<Violation> report;
  const auto s = parse_scenario(R"({
    "mode": "optimize",
    "model": "multi",
    "network": {"ell_r": 50, "lambda_e": 1e-5},
    "sweep": {"lambda_u": [7e-6, 9e-6], "p_jam": [2e-11, 3e-11]},
    "search": {"z_u": {"lo": 0, "hi": 500, "points": 11}, "refine_iterations": 2}
  })", report);
  REQUIRE(s);
  const auto rows = run_scenario(*s);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r.z_u_star);
    CHECK(r.p_se);
    CHECK(!r.d_tu_star);
  }
}

TEST_CASE("row failures do not abort the sweep") {
  std::vector<Violation> report;
  const auto s = parse_scenario(R"({
    "quadrature": {"max_subdivisions": 1},
    "sweep": {"d_tu": [100, 200]}
  })", report);
  REQUIRE(s);
  const auto rows = run_scenario(*s);
  REQUIRE(rows.size() == 2);
  CHECK(!rows[0].error.empty());
  CHECK(!rows[1].error.empty());
  std::ostringstream os;
  write_csv(os, *s, rows);
  CHECK(os.str().find(",error,") != std::string::npos);
}
