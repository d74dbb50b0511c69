#pragma once

#include <map>
#include <set>

#include "manetsim/protocol.hpp"

namespace manetsim {

/// Greedy multipoint-relay cover: first every neighbor that is the sole
/// reacher of some strict 2-hop node, then repeatedly the neighbor covering
/// the most uncovered 2-hop nodes (ties: larger degree, then smaller id).
/// `two_hop_of` maps each symmetric neighbor to the nodes it reaches.
/// Exposed standalone so tests and the analytic snapshot can reuse it.
std::set<NodeId> select_mprs(NodeId self,
                             const std::map<NodeId, std::set<NodeId>>& two_hop_of);

/// Optimized Link State Routing. HELLO-based neighbor sensing (no MAC LSM;
/// neighbors expire after neighbor_hold), MPR selection signaled through
/// HELLOs, TC messages forwarded only by MPRs, triggered TCs when the MPR
/// set or the selector set changes (triggered emission resets the periodic
/// timer). OLSR-M is the same machine with shortened intervals.
class OlsrProtocol : public Protocol {
 public:
  OlsrProtocol(ProtocolContext& ctx, const OlsrConfig& cfg);

  void start() override;
  void handle_packet(const Packet& pkt, NodeId from) override;
  void handle_link_event(const LinkEvent& ev) override;
  std::optional<RouteEntry> route_lookup(NodeId dest) const override;

  struct Neighbor {
    SimTime last_heard = 0.0;
    bool symmetric = false;
    std::set<NodeId> two_hop;  // from the neighbor's HELLO, minus self
  };

  const std::map<NodeId, Neighbor>& neighbors() const { return neighbors_; }
  const std::set<NodeId>& mpr_set() const { return mpr_set_; }
  const std::set<NodeId>& mpr_selectors() const { return mpr_selectors_; }
  std::uint32_t ansn() const { return ansn_; }
  std::uint64_t triggered_tcs() const { return triggered_tcs_; }
  const std::map<NodeId, RouteEntry>& routes() const;

 private:
  struct TopologyEntry {
    std::uint32_t ansn = 0;
    std::set<NodeId> selectors;
    SimTime expires = 0.0;
  };

  void hello_tick();
  void tc_tick(std::uint64_t generation);
  void emit_tc(bool triggered);
  void request_triggered_tc();
  void process_hello(const OlsrHelloMsg& msg, NodeId from);
  void process_tc(const Packet& pkt, NodeId from);
  void expire_neighbors();
  void recompute_mprs();
  void set_selectors(std::set<NodeId> selectors);

  OlsrConfig cfg_;
  std::map<NodeId, Neighbor> neighbors_;
  std::set<NodeId> mpr_set_;
  std::set<NodeId> mpr_selectors_;
  std::uint32_t ansn_ = 0;
  std::uint64_t tc_emission_ = 0;
  std::uint64_t tc_timer_gen_ = 0;
  std::uint64_t triggered_tcs_ = 0;
  bool tc_pending_ = false;
  std::map<NodeId, TopologyEntry> topology_;
  std::map<NodeId, std::uint64_t> forwarded_;  // max emission forwarded per origin
  double topology_hold_;
  mutable bool routes_dirty_ = true;
  mutable std::map<NodeId, RouteEntry> routes_;
};

}  // namespace manetsim
