#include "manetsim/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "manetsim/network.hpp"
#include "manetsim/olsr.hpp"

namespace manetsim {

namespace {

/// BFS hop distances from `src` on the unit-disk graph of `positions`.
std::vector<int> hop_distances(const std::vector<Position>& positions,
                               double range, int src) {
  int n = static_cast<int>(positions.size());
  std::vector<int> dist(n, -1);
  dist[src] = 0;
  std::deque<int> frontier{src};
  while (!frontier.empty()) {
    int u = frontier.front();
    frontier.pop_front();
    for (int v = 0; v < n; ++v) {
      if (dist[v] >= 0 || v == u) continue;
      if (in_range(positions[u], positions[v], range)) {
        dist[v] = dist[u] + 1;
        frontier.push_back(v);
      }
    }
  }
  return dist;
}

int count_network_mprs(const std::vector<Position>& positions, double range) {
  int n = static_cast<int>(positions.size());
  std::set<NodeId> all_mprs;
  for (int self = 0; self < n; ++self) {
    std::map<NodeId, std::set<NodeId>> two_hop_of;
    for (int nb = 0; nb < n; ++nb) {
      if (nb == self || !in_range(positions[self], positions[nb], range)) {
        continue;
      }
      auto& reached = two_hop_of[nb];
      for (int w = 0; w < n; ++w) {
        if (w != nb && in_range(positions[nb], positions[w], range)) {
          reached.insert(w);
        }
      }
    }
    for (NodeId m : select_mprs(self, two_hop_of)) all_mprs.insert(m);
  }
  return static_cast<int>(all_mprs.size());
}

analytic::AnalyticInputs build_inputs(const ScenarioConfig& cfg,
                                      const std::vector<Position>& positions) {
  analytic::AnalyticInputs in;
  in.tau_nl = cfg.duration;
  in.tau_ns = 0.0;
  in.n = cfg.n;
  in.tau_ru_per = cfg.dsdv.ru_per_interval;
  in.tau_ias = cfg.fsr.intra_interval;
  in.tau_ies = cfg.fsr.inter_interval;
  in.tau_hello = cfg.active_olsr().hello_interval;
  for (int i = 0; i < cfg.n; ++i) {
    auto dist = hop_distances(positions, cfg.range, i);
    int neighbors = 0, intra = 0, inter = 0;
    for (int j = 0; j < cfg.n; ++j) {
      if (j == i || dist[j] < 0) continue;
      if (dist[j] == 1) ++neighbors;
      if (dist[j] <= cfg.fsr.intra_ttl) ++intra;
      ++inter;
    }
    in.nb.push_back(neighbors);
    in.n_ias.push_back(intra);
    in.n_ies.push_back(inter);
  }
  if (cfg.protocol == ProtocolKind::Olsr || cfg.protocol == ProtocolKind::OlsrM) {
    in.n_mprs = count_network_mprs(positions, cfg.range);
  }
  return in;
}

std::string fmt(double value, const char* format) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

}  // namespace

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError{0, "sweep values must be nonempty"};
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i - 1] < values[i])) {
      throw ConfigError{0, "sweep values must be strictly increasing"};
    }
  }
  if (seeds < 1) throw ConfigError{0, "sweep needs at least one seed"};
}

std::string to_string(SweepSpec::Axis axis) {
  switch (axis) {
    case SweepSpec::Axis::Pause: return "pause";
    case SweepSpec::Axis::N: return "n";
    case SweepSpec::Axis::FlowRate: return "flow_rate";
  }
  return "?";
}

SweepSpec parse_sweep(const std::string& text, int seeds) {
  auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw ConfigError{0, "sweep must look like axis=v1,v2,..."};
  }
  SweepSpec spec;
  std::string axis = text.substr(0, eq);
  if (axis == "pause") {
    spec.axis = SweepSpec::Axis::Pause;
  } else if (axis == "n") {
    spec.axis = SweepSpec::Axis::N;
  } else if (axis == "flow_rate") {
    spec.axis = SweepSpec::Axis::FlowRate;
  } else {
    throw ConfigError{0, "unknown sweep axis '" + axis + "'"};
  }
  std::istringstream in(text.substr(eq + 1));
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      spec.values.push_back(std::stod(item));
    } catch (...) {
      throw ConfigError{0, "malformed sweep value '" + item + "'"};
    }
  }
  spec.seeds = seeds;
  spec.validate();
  return spec;
}

RunResult run_single(const ScenarioConfig& cfg) {
  Network net(cfg);
  std::vector<Position> positions;
  positions.reserve(cfg.n);
  for (int i = 0; i < cfg.n; ++i) {
    positions.push_back(net.mobility().position(i, 0.0));
  }

  net.run();

  RunResult result;
  result.record = net.finalize();

  analytic::AnalyticInputs in = build_inputs(cfg, positions);
  auto& metrics = net.metrics();
  in.trigger_events = metrics.total_origin_count(ControlCounter::RuTri);
  if (cfg.protocol == ProtocolKind::Olsr || cfg.protocol == ProtocolKind::OlsrM) {
    std::uint64_t triggered = 0;
    for (int i = 0; i < cfg.n; ++i) {
      triggered += static_cast<OlsrProtocol&>(net.protocol(i)).triggered_tcs();
    }
    in.unstable_events = triggered;
    in.stable_rounds = static_cast<std::uint64_t>(
        cfg.duration / cfg.active_olsr().tc_interval);
  }
  result.analytic_inputs = in;

  analytic::CeBreakdown ce;
  std::vector<std::pair<std::string,
                        std::pair<double, std::vector<std::uint64_t>>>> rounds;
  auto per_node = [&](ControlCounter counter) {
    std::vector<std::uint64_t> counts;
    for (int i = 0; i < cfg.n; ++i) {
      counts.push_back(metrics.origin_count(i, counter));
    }
    return counts;
  };
  switch (cfg.protocol) {
    case ProtocolKind::Dsdv:
      ce = analytic::ce_dsdv(in);
      rounds.emplace_back("ru_per",
                          std::make_pair(cfg.duration / in.tau_ru_per,
                                         per_node(ControlCounter::RuPer)));
      break;
    case ProtocolKind::Fsr:
      ce = analytic::ce_fsr(in);
      rounds.emplace_back("ias",
                          std::make_pair(cfg.duration / in.tau_ias,
                                         per_node(ControlCounter::Ias)));
      rounds.emplace_back("ies",
                          std::make_pair(cfg.duration / in.tau_ies,
                                         per_node(ControlCounter::Ies)));
      break;
    case ProtocolKind::Olsr:
    case ProtocolKind::OlsrM:
      ce = analytic::ce_olsr(in);
      rounds.emplace_back("hello",
                          std::make_pair(cfg.duration / in.tau_hello,
                                         per_node(ControlCounter::Hello)));
      break;
  }
  result.analytic_ce_total = ce.total;
  result.reconcile = analytic::reconcile(in, ce.total,
                                         result.record.ce_control_tx, rounds);
  result.analytic_sim_ratio = result.reconcile.ratio;
  return result;
}

namespace {

CsvRow make_row(const ScenarioConfig& cfg, const std::string& axis,
                double axis_value, const std::string& seed) {
  CsvRow row;
  row.protocol = to_string(cfg.protocol);
  row.axis = axis;
  row.axis_value = axis_value;
  row.seed = seed;
  return row;
}

void apply_axis(ScenarioConfig& cfg, SweepSpec::Axis axis, double value) {
  switch (axis) {
    case SweepSpec::Axis::Pause:
      cfg.pause = value;
      break;
    case SweepSpec::Axis::N:
      cfg.n = static_cast<int>(value);
      break;
    case SweepSpec::Axis::FlowRate:
      cfg.flow_rate = value;
      break;
  }
}

CsvRow aggregate_rows(const std::vector<CsvRow>& seed_rows,
                      const CsvRow& proto_row) {
  CsvRow mean = proto_row;
  mean.seed = "mean";
  MetricsRecord agg;
  double count = 0.0;
  double ct_sum = 0.0;
  double ct_count = 0.0;
  double ce_total = 0.0, ratio = 0.0;
  double thr = 0.0;
  double sent = 0, delivered = 0, dnr = 0, dttl = 0, dbuf = 0, ce_tx = 0,
         ce_bytes = 0;
  for (const CsvRow& row : seed_rows) {
    if (!row.record) continue;
    count += 1.0;
    const MetricsRecord& r = *row.record;
    thr += r.throughput_bps;
    if (r.ct_mean) {
      ct_sum += *r.ct_mean;
      ct_count += 1.0;
    }
    sent += static_cast<double>(r.sent);
    delivered += static_cast<double>(r.delivered);
    dnr += static_cast<double>(r.dropped_no_route);
    dttl += static_cast<double>(r.dropped_ttl);
    dbuf += static_cast<double>(r.dropped_buffer);
    ce_tx += static_cast<double>(r.ce_control_tx);
    ce_bytes += static_cast<double>(r.ce_control_bytes);
    ce_total += row.analytic_ce_total;
    ratio += row.analytic_sim_ratio;
  }
  if (count == 0.0) {
    mean.error = "all seeds failed";
    return mean;
  }
  agg.throughput_bps = thr / count;
  if (ct_count > 0.0) agg.ct_mean = ct_sum / ct_count;
  agg.sent = static_cast<std::uint64_t>(std::llround(sent / count));
  agg.delivered = static_cast<std::uint64_t>(std::llround(delivered / count));
  agg.dropped_no_route =
      static_cast<std::uint64_t>(std::llround(dnr / count));
  agg.dropped_ttl = static_cast<std::uint64_t>(std::llround(dttl / count));
  agg.dropped_buffer = static_cast<std::uint64_t>(std::llround(dbuf / count));
  agg.ce_control_tx = static_cast<std::uint64_t>(std::llround(ce_tx / count));
  agg.ce_control_bytes =
      static_cast<std::uint64_t>(std::llround(ce_bytes / count));
  mean.record = agg;
  mean.analytic_ce_total = ce_total / count;
  mean.analytic_sim_ratio = ratio / count;
  return mean;
}

}  // namespace

SweepOutcome run_sweep(const ScenarioConfig& base, const SweepSpec& sweep) {
  sweep.validate();
  SweepOutcome out;
  std::string axis = to_string(sweep.axis);
  for (double value : sweep.values) {
    std::vector<CsvRow> seed_rows;
    for (int s = 0; s < sweep.seeds; ++s) {
      ScenarioConfig cfg = base;
      apply_axis(cfg, sweep.axis, value);
      cfg.seed = base.seed + static_cast<std::uint64_t>(s);
      CsvRow row = make_row(cfg, axis, value, std::to_string(cfg.seed));
      try {
        cfg.validate();
        RunResult result = run_single(cfg);
        row.record = result.record;
        row.analytic_ce_total = result.analytic_ce_total;
        row.analytic_sim_ratio = result.analytic_sim_ratio;
      } catch (const ConfigError& err) {
        row.error = err.message;
        out.any_failed = true;
      } catch (const std::exception& err) {
        row.error = err.what();
        out.any_failed = true;
      }
      seed_rows.push_back(row);
    }
    CsvRow mean = aggregate_rows(
        seed_rows, make_row(base, axis, value, "mean"));
    if (!mean.error.empty()) out.any_failed = true;
    for (CsvRow& row : seed_rows) out.rows.push_back(std::move(row));
    out.rows.push_back(std::move(mean));
  }
  return out;
}

SweepOutcome run_once(const ScenarioConfig& cfg) {
  SweepOutcome out;
  CsvRow row = make_row(cfg, "none", 0.0, std::to_string(cfg.seed));
  try {
    RunResult result = run_single(cfg);
    row.record = result.record;
    row.analytic_ce_total = result.analytic_ce_total;
    row.analytic_sim_ratio = result.analytic_sim_ratio;
  } catch (const std::exception& err) {
    row.error = err.what();
    out.any_failed = true;
  }
  out.rows.push_back(std::move(row));
  return out;
}

const char* const kCsvHeader =
    "protocol,axis,axis_value,seed,throughput_bps,ct_mean_s,ce_control_tx,"
    "ce_control_bytes,sent,delivered,dropped_no_route,dropped_ttl,"
    "dropped_buffer,analytic_ce_total,analytic_sim_ratio";

void write_csv(const std::vector<CsvRow>& rows, std::ostream& out) {
  out << kCsvHeader << "\n";
  for (const CsvRow& row : rows) {
    out << row.protocol << ',' << row.axis << ','
        << fmt(row.axis_value, "%g") << ',' << row.seed << ',';
    if (!row.record) {
      // Failed run: metric columns stay empty.
      out << ",,,,,,,,,,\n";
      continue;
    }
    const MetricsRecord& r = *row.record;
    out << fmt(r.throughput_bps, "%.3f") << ',';
    if (r.ct_mean) out << fmt(*r.ct_mean, "%.6f");
    out << ',' << r.ce_control_tx << ',' << r.ce_control_bytes << ','
        << r.sent << ',' << r.delivered << ',' << r.dropped_no_route << ','
        << r.dropped_ttl << ',' << r.dropped_buffer << ','
        << fmt(row.analytic_ce_total, "%.3f") << ','
        << fmt(row.analytic_sim_ratio, "%.6f") << "\n";
  }
}

}  // namespace manetsim
