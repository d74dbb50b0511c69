#pragma once

#include <map>
#include <set>

#include "manetsim/protocol.hpp"

namespace manetsim {

/// Fisheye State Routing: link-state records flooded in two scopes at
/// graded frequencies (intra-scope TTL 2 every 5 s, inter-scope TTL 255
/// every 15 s), with duplicate suppression per (origin, ls_seq). Strictly
/// periodic: link events mutate local state and never transmit.
class FsrProtocol : public Protocol {
 public:
  FsrProtocol(ProtocolContext& ctx, const FsrConfig& cfg);

  void start() override;
  void handle_packet(const Packet& pkt, NodeId from) override;
  void handle_link_event(const LinkEvent& ev) override;
  std::optional<RouteEntry> route_lookup(NodeId dest) const override;

  struct LinkStateRecord {
    std::vector<NodeId> neighbors;
    std::uint64_t ls_seq = 0;
    SimTime received_at = 0.0;
  };

  const std::map<NodeId, LinkStateRecord>& database() const { return db_; }
  const std::set<NodeId>& neighbor_set() const { return neighbors_; }

  /// Full routing table (recomputes the shortest-path tree if stale).
  const std::map<NodeId, RouteEntry>& routes() const;

 private:
  void intra_tick();
  void inter_tick();
  void originate(int ttl, ControlCounter counter);
  int message_size(std::size_t neighbor_count) const {
    return 12 + 4 * static_cast<int>(neighbor_count);
  }

  FsrConfig cfg_;
  std::map<NodeId, LinkStateRecord> db_;
  std::set<NodeId> neighbors_;
  std::uint64_t own_seq_ = 0;
  std::map<NodeId, std::uint64_t> forwarded_;  // max ls_seq forwarded per origin
  mutable bool routes_dirty_ = true;
  mutable std::map<NodeId, RouteEntry> routes_;
};

}  // namespace manetsim
