#pragma once

#include <functional>
#include <set>
#include <vector>

#include "manetsim/metrics.hpp"
#include "manetsim/mobility.hpp"
#include "manetsim/packet.hpp"
#include "manetsim/sim.hpp"

namespace manetsim {

struct RadioParams {
  double range = 250.0;        // m, NS-2 802.11 convention
  double bandwidth = 2e6;      // bit/s
  double jitter_max = 0.001;   // s, applied to broadcast deliveries
  double lsm_interval = 0.5;   // s, MAC link-sensing period
};

struct LinkEvent {
  NodeId node;      // sensing node
  NodeId neighbor;
  bool up;
  SimTime at;
};

/// Boundary rule: distance exactly equal to range counts as in range.
/// Squared comparison: this sits in the O(n) scan of every transmission.
inline bool in_range(const Position& a, const Position& b, double range) {
  double dx = a.x - b.x;
  double dy = a.y - b.y;
  return dx * dx + dy * dy <= range * range;
}

/// Idealized unit-disk radio. Bandwidth appears only as serialization
/// delay; there are no collisions or losses. Broadcast deliveries get a
/// uniform jitter in [0, jitter_max) to break timer synchronization.
class Medium {
 public:
  using PositionFn = std::function<Position(NodeId, SimTime)>;
  using DeliverFn = std::function<void(NodeId to, Packet pkt, NodeId from)>;

  enum class UnicastResult { Delivered, LinkBreak };

  Medium(Simulator& sim, RandomSource& rng, RadioParams params, int n_nodes,
         PositionFn position, DeliverFn deliver,
         MetricsCollector* metrics = nullptr);

  /// One transmission; every node currently in range receives a copy after
  /// the serialization delay plus jitter. Returns deliveries scheduled.
  int broadcast(NodeId src, const Packet& pkt);

  /// One transmission attempt. Out-of-range next hop yields LinkBreak with
  /// no delivery; the caller is responsible for the down notification.
  UnicastResult unicast(NodeId src, NodeId next_hop, const Packet& pkt);

  std::vector<NodeId> neighbors_of(NodeId node) const;

  /// Compares the current in-range set against the last sensed one and
  /// returns up/down events for the difference. The caller reschedules.
  std::vector<LinkEvent> lsm_tick(NodeId node);

  std::uint64_t total_tx() const { return total_tx_; }
  const RadioParams& params() const { return params_; }

 private:
  double tx_delay(const Packet& pkt) const {
    return static_cast<double>(pkt.size) * 8.0 / params_.bandwidth;
  }
  void count_tx(NodeId src, const Packet& pkt);

  Simulator& sim_;
  RandomSource& rng_;
  RadioParams params_;
  int n_nodes_;
  PositionFn position_;
  DeliverFn deliver_;
  MetricsCollector* metrics_;
  std::uint64_t total_tx_ = 0;
  std::vector<std::set<NodeId>> last_sensed_;
};

}  // namespace manetsim
