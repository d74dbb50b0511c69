// pybind11 surface: scenario configs, single runs, sweeps and the
// closed-form CE models. Results cross the boundary as plain dicts so the
// python side stays schema-free.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "manetsim/analytic.hpp"
#include "manetsim/config.hpp"
#include "manetsim/scenario.hpp"

namespace py = pybind11;
using namespace manetsim;

namespace {

py::dict record_to_dict(const MetricsRecord& rec) {
  py::dict d;
  d["throughput_bps"] = rec.throughput_bps;
  d["ct_mean"] = rec.ct_mean ? py::cast(*rec.ct_mean) : py::none();
  d["ct_samples"] = rec.ct_samples;
  d["ce_control_tx"] = rec.ce_control_tx;
  d["ce_control_bytes"] = rec.ce_control_bytes;
  d["sent"] = rec.sent;
  d["delivered"] = rec.delivered;
  d["dropped_no_route"] = rec.dropped_no_route;
  d["dropped_ttl"] = rec.dropped_ttl;
  d["dropped_buffer"] = rec.dropped_buffer;
  d["in_flight_at_end"] = rec.in_flight_at_end;
  d["duplicates"] = rec.duplicates;
  return d;
}

py::dict ce_to_dict(const analytic::CeBreakdown& ce) {
  py::dict d;
  d["periodic"] = ce.periodic;
  d["triggered"] = ce.triggered;
  d["total"] = ce.total;
  return d;
}

py::dict run_to_dict(const RunResult& result) {
  py::dict d;
  d["record"] = record_to_dict(result.record);
  d["analytic_ce_total"] = result.analytic_ce_total;
  d["analytic_sim_ratio"] = result.analytic_sim_ratio;
  py::list rounds;
  for (const auto& check : result.reconcile.rounds) {
    py::dict r;
    r["name"] = check.name;
    r["analytic_rounds"] = check.analytic_rounds;
    r["simulated_mean"] = check.simulated_mean;
    r["within_one"] = check.within_one;
    rounds.append(r);
  }
  d["reconcile_rounds"] = rounds;
  return d;
}

py::dict outcome_to_dict(const SweepOutcome& outcome) {
  py::dict d;
  std::ostringstream csv;
  write_csv(outcome.rows, csv);
  d["csv"] = csv.str();
  d["any_failed"] = outcome.any_failed;
  py::list rows;
  for (const CsvRow& row : outcome.rows) {
    py::dict r;
    r["protocol"] = row.protocol;
    r["axis"] = row.axis;
    r["axis_value"] = row.axis_value;
    r["seed"] = row.seed;
    r["error"] = row.error;
    r["record"] = row.record ? py::object(record_to_dict(*row.record))
                             : py::object(py::none());
    r["analytic_ce_total"] = row.analytic_ce_total;
    r["analytic_sim_ratio"] = row.analytic_sim_ratio;
    rows.append(r);
  }
  d["rows"] = rows;
  return d;
}

}  // namespace

PYBIND11_MODULE(_manetsim, m) {
  m.doc() = "Packet-level simulator for proactive MANET routing";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& err) {
      std::string msg = err.message;
      if (err.line > 0) msg += " (line " + std::to_string(err.line) + ")";
      PyErr_SetString(PyExc_ValueError, msg.c_str());
    }
  });

  py::class_<ScenarioConfig>(m, "Scenario")
      .def(py::init<>())
      .def_property(
          "protocol",
          [](const ScenarioConfig& cfg) { return to_string(cfg.protocol); },
          [](ScenarioConfig& cfg, const std::string& name) {
            auto kind = protocol_from_string(name);
            if (!kind) throw py::value_error("unknown protocol: " + name);
            cfg.protocol = *kind;
          })
      .def_readwrite("n", &ScenarioConfig::n)
      .def_readwrite("field_side", &ScenarioConfig::field_side)
      .def_readwrite("range", &ScenarioConfig::range)
      .def_readwrite("bandwidth", &ScenarioConfig::bandwidth)
      .def_readwrite("speed", &ScenarioConfig::speed)
      .def_readwrite("pause", &ScenarioConfig::pause)
      .def_readwrite("duration", &ScenarioConfig::duration)
      .def_readwrite("flows", &ScenarioConfig::flows)
      .def_readwrite("flow_rate", &ScenarioConfig::flow_rate)
      .def_readwrite("pkt_size", &ScenarioConfig::pkt_size)
      .def_readwrite("seed", &ScenarioConfig::seed)
      .def_readwrite("jitter_max", &ScenarioConfig::jitter_max)
      .def_readwrite("lsm_interval", &ScenarioConfig::lsm_interval)
      .def_readwrite("flow_start", &ScenarioConfig::flow_start)
      .def("validate", &ScenarioConfig::validate);

  m.def("load_config", &load_config, py::arg("path"),
        "Parse a scenario config file.");
  m.def("parse_config", &parse_config, py::arg("text"),
        "Parse scenario config text.");

  m.def(
      "run",
      [](const ScenarioConfig& cfg) { return run_to_dict(run_single(cfg)); },
      py::arg("scenario"),
      "Run one scenario; returns metrics plus the analytic CE comparison.");

  m.def(
      "sweep",
      [](const ScenarioConfig& cfg, const std::string& spec, int seeds) {
        return outcome_to_dict(run_sweep(cfg, parse_sweep(spec, seeds)));
      },
      py::arg("scenario"), py::arg("spec"), py::arg("seeds") = 1,
      "Run a sweep like 'pause=0,100,900'; returns rows plus the csv text.");

  py::class_<analytic::AnalyticInputs>(m, "AnalyticInputs")
      .def(py::init<>())
      .def_readwrite("tau_nl", &analytic::AnalyticInputs::tau_nl)
      .def_readwrite("tau_ns", &analytic::AnalyticInputs::tau_ns)
      .def_readwrite("n", &analytic::AnalyticInputs::n)
      .def_readwrite("tau_ru_per", &analytic::AnalyticInputs::tau_ru_per)
      .def_readwrite("trigger_events",
                     &analytic::AnalyticInputs::trigger_events)
      .def_readwrite("tau_ias", &analytic::AnalyticInputs::tau_ias)
      .def_readwrite("tau_ies", &analytic::AnalyticInputs::tau_ies)
      .def_readwrite("n_ias", &analytic::AnalyticInputs::n_ias)
      .def_readwrite("n_ies", &analytic::AnalyticInputs::n_ies)
      .def_readwrite("tau_hello", &analytic::AnalyticInputs::tau_hello)
      .def_readwrite("nb", &analytic::AnalyticInputs::nb)
      .def_readwrite("n_mprs", &analytic::AnalyticInputs::n_mprs)
      .def_readwrite("stable_rounds",
                     &analytic::AnalyticInputs::stable_rounds)
      .def_readwrite("unstable_events",
                     &analytic::AnalyticInputs::unstable_events);

  m.def(
      "ce_dsdv",
      [](const analytic::AnalyticInputs& in) {
        return ce_to_dict(analytic::ce_dsdv(in));
      },
      py::arg("inputs"));
  m.def(
      "ce_fsr",
      [](const analytic::AnalyticInputs& in, const std::string& reading) {
        analytic::FsrScopeReading r;
        if (reading == "per_node") {
          r = analytic::FsrScopeReading::PerNode;
        } else if (reading == "uniform") {
          r = analytic::FsrScopeReading::Uniform;
        } else {
          throw py::value_error("reading must be 'per_node' or 'uniform'");
        }
        return ce_to_dict(analytic::ce_fsr(in, r));
      },
      py::arg("inputs"), py::arg("reading") = "per_node");
  m.def(
      "ce_olsr",
      [](const analytic::AnalyticInputs& in) {
        return ce_to_dict(analytic::ce_olsr(in));
      },
      py::arg("inputs"));
}
