// uavjam: scenario runner for jammer-assisted secrecy studies.
//
//   uavjam run scenario.json [--seed N] [--output results.csv] [--threads N]
//   uavjam validate scenario.json

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "uavjam/scenario.hpp"

namespace {

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

void print_report(const std::vector<uavjam::Violation>& report) {
  for (const auto& v : report) {
    std::cerr << "  " << v.field << ": " << v.rule << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy analysis and simulation for UAV jammer placement"};
  app.set_version_flag("--version", std::string(uavjam::library_version()));
  app.require_subcommand(1);

  std::string scenario_path;
  std::uint64_t seed = 0;
  std::string output;
  unsigned threads = 0;

  auto* run = app.add_subcommand("run", "Run a scenario and write its table");
  run->add_option("scenario", scenario_path, "Scenario file (JSON)")
      ->required();
  auto* seed_opt =
      run->add_option("--seed", seed, "Override the Monte Carlo seed");
  run->add_option("--output", output,
                  "CSV path; the manifest goes to <path>.manifest.json");
  run->add_option("--threads", threads, "Worker threads")
      ->check(CLI::Range(1u, 1024u));

  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("scenario", scenario_path, "Scenario file (JSON)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  std::string text;
  if (!read_file(scenario_path, text)) {
    std::cerr << "uavjam: cannot read " << scenario_path << "\n";
    return 1;
  }

  std::vector<uavjam::Violation> report;
  auto scenario = uavjam::parse_scenario(text, report);

  if (validate->parsed()) {
    if (report.empty()) {
      std::cout << scenario_path << ": ok (" << uavjam::row_count(*scenario)
                << " rows)\n";
      return 0;
    }
    std::cerr << scenario_path << ": " << report.size() << " problem(s)\n";
    print_report(report);
    return 1;
  }

  if (!scenario) {
    std::cerr << "uavjam: invalid scenario " << scenario_path << "\n";
    print_report(report);
    return 1;
  }
  if (*seed_opt) scenario->mc.seed = seed;
  if (threads > 0) scenario->mc.threads = threads;
  if (!output.empty()) scenario->output = output;

  const auto rows = uavjam::run_scenario(*scenario);
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.error.empty() ? 0 : 1;

  if (scenario->output.empty() || scenario->output == "-") {
    uavjam::write_csv(std::cout, *scenario, rows);
  } else {
    std::ofstream csv(scenario->output, std::ios::binary);
    std::ofstream manifest(scenario->output + ".manifest.json",
                           std::ios::binary);
    if (!csv || !manifest) {
      std::cerr << "uavjam: cannot write " << scenario->output << "\n";
      return 1;
    }
    uavjam::write_csv(csv, *scenario, rows);
    manifest << uavjam::manifest_json(*scenario);
    std::cerr << "wrote " << rows.size() << " rows to " << scenario->output
              << "\n";
  }
  if (failed > 0) {
    std::cerr << "uavjam: " << failed << " row(s) failed; see the message "
                 "column\n";
    return 3;
  }
  return 0;
}
