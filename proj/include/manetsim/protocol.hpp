#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "manetsim/config.hpp"
#include "manetsim/medium.hpp"
#include "manetsim/metrics.hpp"
#include "manetsim/packet.hpp"

namespace manetsim {

struct RouteEntry {
  NodeId dest;
  NodeId next_hop;
  int metric;  // hop count; 0 only for the self-route
  std::uint32_t seq_num = 0;  // DSDV only
  SimTime installed_at = 0.0;
  bool advertised = false;
};

/// Services the engine provides to a routing protocol instance.
class ProtocolContext {
 public:
  virtual ~ProtocolContext() = default;
  virtual NodeId self() const = 0;
  virtual SimTime now() const = 0;
  virtual void broadcast(const Packet& pkt) = 0;
  virtual Medium::UnicastResult unicast(NodeId next_hop, const Packet& pkt) = 0;
  virtual void schedule(double delay, std::function<void()> fn) = 0;
  virtual void forward_data(Packet pkt) = 0;
  virtual MetricsCollector& metrics() = 0;
  virtual const ScenarioConfig& config() const = 0;
};

/// Behavioral contract every routing protocol implements. Implementations
/// only mutate their own node's state; all cross-node interaction goes
/// through packets on the medium.
class Protocol {
 public:
  explicit Protocol(ProtocolContext& ctx) : ctx_(ctx) {}
  virtual ~Protocol() = default;

  virtual void start() = 0;
  virtual void handle_packet(const Packet& pkt, NodeId from) = 0;
  virtual void handle_link_event(const LinkEvent& ev) = 0;

  /// Side-effect free (mutable caches allowed).
  virtual std::optional<RouteEntry> route_lookup(NodeId dest) const = 0;

  /// DSDV settling buffer hook; returns true when the protocol took
  /// ownership of the packet (it will forward or account for it later).
  virtual bool hold_data(const Packet&) { return false; }

 protected:
  ProtocolContext& ctx_;
};

/// Hop-count shortest paths over an undirected adjacency view, with the
/// smallest next-hop id chosen among equal-length paths. Shared by the
/// link-state protocols; the test oracle is implemented independently.
std::map<NodeId, RouteEntry> compute_hop_routes(
    NodeId self, const std::map<NodeId, std::vector<NodeId>>& adjacency,
    SimTime now);

}  // namespace manetsim
