#pragma once

#include <deque>
#include <map>
#include <set>

#include "manetsim/protocol.hpp"

namespace manetsim {

/// Destination-Sequenced Distance Vector.
///
/// Periodic full-table dumps every ru_per_interval (first dump one interval
/// after start), incremental triggered updates on link break and on newly
/// learned destinations, even/odd sequence-number freshness, and a fixed
/// settling-time gate that delays the advertisement of recently *changed*
/// routes (brand-new destinations are not damped, so reachability spreads
/// hop by hop at radio speed instead of one dump interval per hop). Link
/// sensing comes from the medium's LSM ticks; an up event installs the
/// direct metric-1 route.
class DsdvProtocol : public Protocol {
 public:
  DsdvProtocol(ProtocolContext& ctx, const DsdvConfig& cfg);

  void start() override;
  void handle_packet(const Packet& pkt, NodeId from) override;
  void handle_link_event(const LinkEvent& ev) override;
  std::optional<RouteEntry> route_lookup(NodeId dest) const override;
  bool hold_data(const Packet& pkt) override;

  struct Route {
    NodeId next_hop;
    int metric;
    std::uint32_t seq_num;
    SimTime installed_at = 0.0;
    SimTime settle_until = 0.0;  // excluded from advertisements before this
  };

  const std::map<NodeId, Route>& table() const { return table_; }
  std::uint32_t self_seq() const { return self_seq_; }
  std::uint64_t triggered_updates() const { return triggered_updates_; }

  /// Entries currently eligible for advertisement (settle gate applied).
  std::vector<DsdvRouteAd> advertisable_entries() const;

 private:
  void periodic_dump();
  void on_link_break(NodeId neighbor);
  void request_new_dest_ad(NodeId dest);
  void process_update(const DsdvUpdateMsg& msg, NodeId from);
  void adopt(NodeId dest, NodeId via, int metric, std::uint32_t seq);
  void release_buffered(NodeId dest);
  int update_size(std::size_t entries) const {
    return 12 + 8 * static_cast<int>(entries);
  }

  DsdvConfig cfg_;
  std::map<NodeId, Route> table_;
  std::uint32_t self_seq_ = 0;
  std::uint64_t triggered_updates_ = 0;
  std::set<NodeId> pending_new_;  // new dests awaiting a triggered ad
  std::map<NodeId, std::deque<Packet>> held_;  // settling buffer per dest
};

}  // namespace manetsim
