#include "manetsim/fsr.hpp"

#include <algorithm>

namespace manetsim {

FsrProtocol::FsrProtocol(ProtocolContext& ctx, const FsrConfig& cfg)
    : Protocol(ctx), cfg_(cfg) {}

void FsrProtocol::start() {
  db_[ctx_.self()] = LinkStateRecord{{}, own_seq_, ctx_.now()};
  ctx_.schedule(cfg_.intra_interval, [this] { intra_tick(); });
  ctx_.schedule(cfg_.inter_interval, [this] { inter_tick(); });
}

void FsrProtocol::intra_tick() {
  originate(cfg_.intra_ttl, ControlCounter::Ias);
  ctx_.schedule(cfg_.intra_interval, [this] { intra_tick(); });
}

void FsrProtocol::inter_tick() {
  originate(cfg_.inter_ttl, ControlCounter::Ies);
  ctx_.schedule(cfg_.inter_interval, [this] { inter_tick(); });
}

void FsrProtocol::originate(int ttl, ControlCounter counter) {
  ++own_seq_;
  FsrLinkStateMsg msg;
  msg.origin = ctx_.self();
  msg.neighbors.assign(neighbors_.begin(), neighbors_.end());
  msg.ls_seq = own_seq_;
  db_[ctx_.self()] = LinkStateRecord{msg.neighbors, own_seq_, ctx_.now()};
  routes_dirty_ = true;
  Packet pkt = make_control(ControlVariant::FsrLinkState, ctx_.self(), ttl,
                            message_size(msg.neighbors.size()), ctx_.now(),
                            std::move(msg));
  ctx_.metrics().on_control_origin(ctx_.self(), counter);
  ctx_.broadcast(pkt);
}

void FsrProtocol::handle_packet(const Packet& pkt, NodeId) {
  if (pkt.variant != ControlVariant::FsrLinkState) return;
  const auto& msg = control_body<FsrLinkStateMsg>(pkt);
  if (msg.origin == ctx_.self()) return;

  auto it = db_.find(msg.origin);
  if (it == db_.end() || msg.ls_seq > it->second.ls_seq) {
    db_[msg.origin] = LinkStateRecord{msg.neighbors, msg.ls_seq, ctx_.now()};
    routes_dirty_ = true;
  }

  // Scoped re-broadcast, at most once per (origin, ls_seq).
  int remaining = pkt.ttl - 1;
  if (remaining <= 0) return;
  auto fwd = forwarded_.find(msg.origin);
  if (fwd != forwarded_.end() && msg.ls_seq <= fwd->second) return;
  forwarded_[msg.origin] = msg.ls_seq;
  Packet copy = pkt;
  copy.ttl = remaining;
  copy.src = ctx_.self();
  ctx_.broadcast(copy);
}

void FsrProtocol::handle_link_event(const LinkEvent& ev) {
  // Neighbor set mutation only; FSR never triggers a transmission here.
  bool changed = ev.up ? neighbors_.insert(ev.neighbor).second
                       : neighbors_.erase(ev.neighbor) > 0;
  if (!changed) return;
  ++own_seq_;
  auto& own = db_[ctx_.self()];
  own.neighbors.assign(neighbors_.begin(), neighbors_.end());
  own.ls_seq = own_seq_;
  own.received_at = ctx_.now();
  routes_dirty_ = true;
}

const std::map<NodeId, RouteEntry>& FsrProtocol::routes() const {
  if (routes_dirty_) {
    std::map<NodeId, std::vector<NodeId>> adjacency;
    for (const auto& [origin, record] : db_) {
      adjacency[origin] = record.neighbors;
    }
    routes_ = compute_hop_routes(ctx_.self(), adjacency, ctx_.now());
    routes_dirty_ = false;
  }
  return routes_;
}

std::optional<RouteEntry> FsrProtocol::route_lookup(NodeId dest) const {
  const auto& table = routes();
  auto it = table.find(dest);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

}  // namespace manetsim
