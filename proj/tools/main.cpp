#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "manetsim/config.hpp"
#include "manetsim/scenario.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& sweep_arg,
                int seeds, const std::string& out_dir,
                const std::string& protocol_override) {
  manetsim::ScenarioConfig cfg;
  try {
    cfg = manetsim::load_config(config_path);
    if (!protocol_override.empty()) {
      auto p = manetsim::protocol_from_string(protocol_override);
      if (!p) {
        throw manetsim::ConfigError{0, "unknown protocol '" +
                                           protocol_override + "'"};
      }
      cfg.protocol = *p;
      cfg.validate();
    }
  } catch (const manetsim::ConfigError& err) {
    if (err.line > 0) {
      std::cerr << config_path << ":" << err.line << ": " << err.message
                << "\n";
    } else {
      std::cerr << "config error: " << err.message << "\n";
    }
    return 2;
  }

  manetsim::SweepOutcome outcome;
  if (!sweep_arg.empty()) {
    manetsim::SweepSpec sweep;
    try {
      sweep = manetsim::parse_sweep(sweep_arg, seeds);
    } catch (const manetsim::ConfigError& err) {
      std::cerr << "config error: " << err.message << "\n";
      return 2;
    }
    outcome = manetsim::run_sweep(cfg, sweep);
  } else {
    outcome = manetsim::run_once(cfg);
  }

  std::filesystem::create_directories(out_dir);
  std::filesystem::path csv_path =
      std::filesystem::path(out_dir) / "results.csv";
  std::ofstream out(csv_path);
  if (!out) {
    std::cerr << "cannot write " << csv_path << "\n";
    return 1;
  }
  manetsim::write_csv(outcome.rows, out);

  for (const auto& row : outcome.rows) {
    if (!row.error.empty()) {
      std::cerr << "run failed (" << row.axis << "=" << row.axis_value
                << ", seed " << row.seed << "): " << row.error << "\n";
    }
  }
  std::cout << csv_path.string() << "\n";
  return outcome.any_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Packet-level simulator for proactive MANET routing"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a scenario or a sweep");
  std::string config_path;
  std::string sweep_arg;
  std::string out_dir = ".";
  std::string protocol_override;
  int seeds = 1;
  run->add_option("--config", config_path, "Scenario config file")
      ->required();
  run->add_option("--sweep", sweep_arg,
                  "Sweep axis=v1,v2,... (axis: pause | n | flow_rate)");
  run->add_option("--seeds", seeds, "Seeds per sweep value")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out_dir, "Output directory for results.csv");
  run->add_option("--protocol", protocol_override,
                  "Override the config's protocol (dsdv|fsr|olsr|olsr_m)");

  CLI11_PARSE(app, argc, argv);
  return run_command(config_path, sweep_arg, seeds, out_dir,
                     protocol_override);
}
