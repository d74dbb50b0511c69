#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "manetsim/config.hpp"
#include "manetsim/medium.hpp"
#include "manetsim/metrics.hpp"
#include "manetsim/mobility.hpp"
#include "manetsim/protocol.hpp"
#include "manetsim/sim.hpp"

namespace manetsim::test {

/// Independent hop-count oracle: Floyd-Warshall over the unit-disk graph,
/// deliberately a different algorithm than the library's BFS routing.
/// Returns hop counts; unreachable pairs get -1.
inline std::vector<std::vector<int>> oracle_hop_counts(
    const std::vector<Position>& pos, double range) {
  const int n = static_cast<int>(pos.size());
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double dx = pos[i].x - pos[j].x;
      double dy = pos[i].y - pos[j].y;
      if (std::sqrt(dx * dx + dy * dy) <= range) d[i][j] = 1;
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
      }
    }
  }
  for (auto& row : d) {
    for (int& v : row) {
      if (v >= inf) v = -1;
    }
  }
  return d;
}

inline bool oracle_connected(const std::vector<Position>& pos, double range) {
  auto d = oracle_hop_counts(pos, range);
  for (const auto& row : d) {
    for (int v : row) {
      if (v < 0) return false;
    }
  }
  return true;
}

/// Uniform positions retried until the unit-disk graph is connected. Uses
/// its own generator so test topologies are independent of the simulator's
/// random stream.
inline std::vector<Position> random_connected_positions(int n, double side,
                                                        double range,
                                                        std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto draw = [&] {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53 * side;
  };
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Position> pos(n);
    for (auto& p : pos) p = Position{draw(), draw()};
    if (oracle_connected(pos, range)) return pos;
  }
  throw std::runtime_error("random_connected_positions: no connected draw");
}

inline std::vector<Position> line_positions(int n, double spacing) {
  std::vector<Position> pos(n);
  for (int i = 0; i < n; ++i) pos[i] = Position{spacing * i, 0.0};
  return pos;
}

/// Nodes on a circle sized so only adjacent nodes are in range; every node
/// ends up an MPR of its neighbors.
inline std::vector<Position> ring_positions(int n, double range) {
  // chord = 2 R sin(pi/n); make adjacent chord = 0.9 * range so the 2-hop
  // chord (2 R sin(2 pi/n)) stays out of range for n >= 7.
  double radius = 0.9 * range / (2.0 * std::sin(M_PI / n));
  std::vector<Position> pos(n);
  double cx = radius + 1.0, cy = radius + 1.0;
  for (int i = 0; i < n; ++i) {
    double a = 2.0 * M_PI * i / n;
    pos[i] = Position{cx + radius * std::cos(a), cy + radius * std::sin(a)};
  }
  return pos;
}

/// Minimal ProtocolContext for driving a protocol instance directly.
class TestContext : public ProtocolContext {
 public:
  TestContext(NodeId self, int n_nodes = 8)
      : self_(self), metrics_(n_nodes) {}

  NodeId self() const override { return self_; }
  SimTime now() const override { return sim_.now(); }
  void broadcast(const Packet& pkt) override { broadcasts.push_back(pkt); }
  Medium::UnicastResult unicast(NodeId next_hop, const Packet& pkt) override {
    unicasts.emplace_back(next_hop, pkt);
    return unicast_result;
  }
  void schedule(double delay, std::function<void()> fn) override {
    sim_.schedule(sim_.now() + delay, std::move(fn));
  }
  void forward_data(Packet pkt) override { forwarded.push_back(std::move(pkt)); }
  MetricsCollector& metrics() override { return metrics_; }
  const ScenarioConfig& config() const override { return cfg_; }

  Simulator& sim() { return sim_; }

  std::vector<Packet> broadcasts;
  std::vector<std::pair<NodeId, Packet>> unicasts;
  std::vector<Packet> forwarded;
  Medium::UnicastResult unicast_result = Medium::UnicastResult::Delivered;

 private:
  NodeId self_;
  Simulator sim_;
  MetricsCollector metrics_;
  ScenarioConfig cfg_;
};

/// Static scenario preset: pause == duration, zero jitter.
inline ScenarioConfig static_scenario(ProtocolKind protocol, int n,
                                      const std::vector<Position>& positions,
                                      double duration) {
  ScenarioConfig cfg;
  cfg.protocol = protocol;
  cfg.n = n;
  cfg.duration = duration;
  cfg.pause = duration;
  cfg.jitter_max = 0.0;
  cfg.flows = 0;
  cfg.fixed_positions = positions;
  return cfg;
}

}  // namespace manetsim::test
