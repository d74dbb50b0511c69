#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "manetsim/analytic.hpp"
#include "manetsim/config.hpp"
#include "manetsim/metrics.hpp"

namespace manetsim {

struct SweepSpec {
  enum class Axis { Pause, N, FlowRate };
  Axis axis = Axis::Pause;
  std::vector<double> values;  // nonempty, strictly increasing
  int seeds = 1;

  void validate() const;  // throws ConfigError
};

std::string to_string(SweepSpec::Axis axis);

/// Parses "axis=v1,v2,..." (axis in {pause, n, flow_rate}).
SweepSpec parse_sweep(const std::string& text, int seeds);

struct RunResult {
  MetricsRecord record;
  analytic::AnalyticInputs analytic_inputs;
  double analytic_ce_total = 0.0;
  double analytic_sim_ratio = 0.0;
  analytic::ReconcileReport reconcile;
};

/// One full simulation plus the closed-form CE evaluation for the same
/// scenario parameters. Scope sizes, neighbor counts and the MPR count are
/// taken from the unit-disk graph of the initial placement.
RunResult run_single(const ScenarioConfig& cfg);

struct CsvRow {
  std::string protocol;
  std::string axis;
  double axis_value = 0.0;
  std::string seed;  // seed number, "mean", or "error"
  std::optional<MetricsRecord> record;
  double analytic_ce_total = 0.0;
  double analytic_sim_ratio = 0.0;
  std::string error;  // non-empty for failed runs
};

struct SweepOutcome {
  std::vector<CsvRow> rows;
  bool any_failed = false;
};

/// One run per axis value x seed (seed = cfg.seed + index), plus one
/// aggregate row per axis value with the arithmetic mean over seeds. Rows
/// are emitted in deterministic (value, seed) order; failures become error
/// rows and the sweep continues.
SweepOutcome run_sweep(const ScenarioConfig& cfg, const SweepSpec& sweep);

/// Single-run outcome in the same row schema (axis "none").
SweepOutcome run_once(const ScenarioConfig& cfg);

extern const char* const kCsvHeader;
void write_csv(const std::vector<CsvRow>& rows, std::ostream& out);

}  // namespace manetsim
