#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavjam/analytic_multi.hpp"
#include "uavjam/channel.hpp"
#include "uavjam/montecarlo.hpp"
#include "uavjam/optimizer.hpp"
#include "uavjam/quadrature.hpp"

namespace uavjam {

enum class ScenarioMode : std::uint8_t { kAnalytic, kSimulate, kCompare, kOptimize };
enum class JammerModel : std::uint8_t { kSingle, kMulti };

/// One swept parameter. Rows are the cartesian product of all axes, the
/// first axis varying slowest.
struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

/// A fully resolved scenario: every field carries a value, defaults filled.
struct Scenario {
  ScenarioMode mode = ScenarioMode::kAnalytic;
  JammerModel model = JammerModel::kSingle;
  EnvironmentParams env;
  NetworkConfig network;
  JammerPlacement placement;
  std::vector<SweepAxis> sweep;
  QuadratureSettings quad;
  MonteCarloSettings mc;
  // Unset search axes default to d_tu in [0, 2 ell_r] / z_u in [0, 500].
  std::optional<GridAxis> search_d_tu;
  std::optional<GridAxis> search_z_u;
  int refine_iterations = 5;
  std::string output;
};

/// Names accepted as sweep axes.
const std::vector<std::string>& sweep_axis_names();

/// Parses a JSON scenario. Any problem, including unknown keys and domain
/// invariants of every sweep row, is appended to `report`; the scenario is
/// returned only when the report stays empty.
std::optional<Scenario> parse_scenario(std::string_view text,
                                       std::vector<Violation>& report);

/// Every violation in the document; empty means it would run.
std::vector<Violation> validate_config(std::string_view text);

/// Number of rows the sweep expands to.
std::size_t row_count(const Scenario& scenario);

struct ResultRow {
  std::vector<double> axis_values;
  std::optional<double> p_s;
  std::optional<double> p_e;
  std::optional<double> p_se;
  std::optional<double> mc_mean;
  std::optional<double> mc_std_error;
  std::optional<double> d_tu_star;
  std::optional<double> z_u_star;
  std::optional<std::uint64_t> evaluations;
  // "PASS"/"FAIL" for compare rows, empty otherwise.
  std::string check;
  // Empty on success, otherwise the failure of this row.
  std::string error;
};

/// Runs every row. Failures are recorded in the row, never thrown.
std::vector<ResultRow> run_scenario(const Scenario& scenario);

void write_csv(std::ostream& os, const Scenario& scenario,
               const std::vector<ResultRow>& rows);

/// The scenario with every value resolved, in the scenario format, plus the
/// library version. Parsing it back yields the same scenario.
std::string manifest_json(const Scenario& scenario);

const char* library_version();

}  // namespace uavjam
