#pragma once

#include <memory>
#include <vector>

#include "manetsim/config.hpp"
#include "manetsim/medium.hpp"
#include "manetsim/metrics.hpp"
#include "manetsim/mobility.hpp"
#include "manetsim/protocol.hpp"
#include "manetsim/sim.hpp"
#include "manetsim/traffic.hpp"

namespace manetsim {

/// One simulation run: engine, mobility, medium, one protocol instance per
/// node, CBR flows and metrics, wired per the scenario config. Fully
/// single-threaded; separate Network instances share nothing.
class Network {
 public:
  explicit Network(const ScenarioConfig& cfg);
  ~Network();

  /// Schedules protocol timers, LSM ticks and flows. Idempotent guard:
  /// callable once.
  void start();

  /// start() + run_until(duration).
  void run();

  /// Dispatches events up to `t` (absolute sim time).
  void run_until(SimTime t);

  MetricsRecord finalize() const {
    return metrics_.finalize(cfg_.duration);
  }

  // --- data path ---
  void inject_data(NodeId src, NodeId dst, int flow, std::uint64_t payload_seq);
  void forward_data(NodeId node, Packet pkt);

  // --- access ---
  Simulator& sim() { return sim_; }
  Medium& medium() { return *medium_; }
  MetricsCollector& metrics() { return metrics_; }
  RandomWaypoint& mobility() { return *mobility_; }
  Protocol& protocol(NodeId node) { return *nodes_.at(node).proto; }
  const ScenarioConfig& config() const { return cfg_; }
  const std::vector<std::pair<int, int>>& flows() const { return flow_pairs_; }

 private:
  struct Node;
  class Context;

  void deliver(NodeId to, Packet pkt, NodeId from);
  void schedule_lsm(NodeId node);
  void schedule_flow_tick(int flow);

  ScenarioConfig cfg_;
  Simulator sim_;
  RandomSource rng_;
  MetricsCollector metrics_;
  std::unique_ptr<RandomWaypoint> mobility_;
  std::unique_ptr<Medium> medium_;

  struct Node {
    std::unique_ptr<Context> ctx;
    std::unique_ptr<Protocol> proto;
  };
  std::vector<Node> nodes_;

  std::vector<std::pair<int, int>> flow_pairs_;
  std::vector<std::unique_ptr<CbrSource>> sources_;
  std::uint64_t next_uid_ = 1;
  bool started_ = false;
};

}  // namespace manetsim
