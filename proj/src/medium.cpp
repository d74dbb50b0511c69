#include "manetsim/medium.hpp"

#include <stdexcept>

namespace manetsim {

Medium::Medium(Simulator& sim, RandomSource& rng, RadioParams params,
               int n_nodes, PositionFn position, DeliverFn deliver,
               MetricsCollector* metrics)
    : sim_(sim),
      rng_(rng),
      params_(params),
      n_nodes_(n_nodes),
      position_(std::move(position)),
      deliver_(std::move(deliver)),
      metrics_(metrics),
      last_sensed_(n_nodes) {}

void Medium::count_tx(NodeId src, const Packet& pkt) {
  ++total_tx_;
  if (metrics_ && pkt.kind == PacketKind::Control) {
    metrics_->on_control_tx(src, pkt, sim_.now());
  }
}

int Medium::broadcast(NodeId src, const Packet& pkt) {
  if (pkt.size <= 0) throw std::logic_error("Medium::broadcast: empty packet");
  count_tx(src, pkt);
  SimTime now = sim_.now();
  Position from = position_(src, now);
  double base = tx_delay(pkt);
  int scheduled = 0;
  for (NodeId to = 0; to < n_nodes_; ++to) {
    if (to == src) continue;
    if (!in_range(from, position_(to, now), params_.range)) continue;
    double jitter = rng_.uniform(0.0, params_.jitter_max);
    Packet copy = pkt;
    sim_.schedule(now + base + jitter, [this, to, copy = std::move(copy), src] {
      deliver_(to, copy, src);
    });
    ++scheduled;
  }
  return scheduled;
}

Medium::UnicastResult Medium::unicast(NodeId src, NodeId next_hop,
                                      const Packet& pkt) {
  if (next_hop == src) throw std::logic_error("Medium::unicast: self unicast");
  if (next_hop < 0 || next_hop >= n_nodes_) {
    throw std::logic_error("Medium::unicast: unknown next hop id");
  }
  count_tx(src, pkt);
  SimTime now = sim_.now();
  if (!in_range(position_(src, now), position_(next_hop, now),
                params_.range)) {
    return UnicastResult::LinkBreak;
  }
  Packet copy = pkt;
  sim_.schedule(now + tx_delay(pkt),
                [this, next_hop, copy = std::move(copy), src] {
                  deliver_(next_hop, copy, src);
                });
  return UnicastResult::Delivered;
}

std::vector<NodeId> Medium::neighbors_of(NodeId node) const {
  SimTime now = sim_.now();
  Position at = position_(node, now);
  std::vector<NodeId> out;
  for (NodeId other = 0; other < n_nodes_; ++other) {
    if (other == node) continue;
    if (in_range(at, position_(other, now), params_.range)) {
      out.push_back(other);
    }
  }
  return out;
}

std::vector<LinkEvent> Medium::lsm_tick(NodeId node) {
  auto current_vec = neighbors_of(node);
  std::set<NodeId> current(current_vec.begin(), current_vec.end());
  std::set<NodeId>& last = last_sensed_.at(node);
  std::vector<LinkEvent> events;
  SimTime now = sim_.now();
  for (NodeId nb : current) {
    if (!last.count(nb)) events.push_back(LinkEvent{node, nb, true, now});
  }
  for (NodeId nb : last) {
    if (!current.count(nb)) events.push_back(LinkEvent{node, nb, false, now});
  }
  last = std::move(current);
  return events;
}

}  // namespace manetsim
