#include "manetsim/dsdv.hpp"

namespace manetsim {

namespace {
bool is_broken(std::uint32_t seq) { return seq % 2 == 1; }
}  // namespace

DsdvProtocol::DsdvProtocol(ProtocolContext& ctx, const DsdvConfig& cfg)
    : Protocol(ctx), cfg_(cfg) {}

void DsdvProtocol::start() {
  table_[ctx_.self()] = Route{ctx_.self(), 0, self_seq_, ctx_.now(), 0.0};
  ctx_.schedule(cfg_.ru_per_interval, [this] { periodic_dump(); });
}

void DsdvProtocol::periodic_dump() {
  self_seq_ += 2;  // self-originated sequence numbers stay even
  auto& self_route = table_[ctx_.self()];
  self_route.seq_num = self_seq_;

  DsdvUpdateMsg msg;
  msg.origin = ctx_.self();
  msg.full_dump = true;
  msg.entries = advertisable_entries();
  Packet pkt = make_control(ControlVariant::DsdvUpdate, ctx_.self(), 1,
                            update_size(msg.entries.size()), ctx_.now(),
                            std::move(msg));
  ctx_.metrics().on_control_origin(ctx_.self(), ControlCounter::RuPer);
  ctx_.broadcast(pkt);
  ctx_.schedule(cfg_.ru_per_interval, [this] { periodic_dump(); });
}

std::vector<DsdvRouteAd> DsdvProtocol::advertisable_entries() const {
  std::vector<DsdvRouteAd> out;
  SimTime now = ctx_.now();
  for (const auto& [dest, route] : table_) {
    if (dest == ctx_.self()) {
      out.push_back(DsdvRouteAd{dest, 0, self_seq_});
      continue;
    }
    if (route.metric < kInfMetric && route.settle_until > now) continue;
    out.push_back(DsdvRouteAd{dest, route.metric, route.seq_num});
  }
  return out;
}

void DsdvProtocol::handle_link_event(const LinkEvent& ev) {
  if (ev.up) {
    auto it = table_.find(ev.neighbor);
    if (it == table_.end()) {
      adopt(ev.neighbor, ev.neighbor, 1, 0);
    } else if (is_broken(it->second.seq_num) || it->second.metric > 1) {
      std::uint32_t seq = is_broken(it->second.seq_num)
                              ? it->second.seq_num + 1
                              : it->second.seq_num;
      adopt(ev.neighbor, ev.neighbor, 1, seq);
    }
  } else {
    on_link_break(ev.neighbor);
  }
}

void DsdvProtocol::on_link_break(NodeId neighbor) {
  DsdvUpdateMsg msg;
  msg.origin = ctx_.self();
  msg.full_dump = false;
  SimTime now = ctx_.now();
  for (auto& [dest, route] : table_) {
    if (dest == ctx_.self()) continue;
    if (route.next_hop != neighbor || route.metric >= kInfMetric) continue;
    route.metric = kInfMetric;
    route.seq_num += 1;  // next odd value marks the break
    route.installed_at = now;
    route.settle_until = 0.0;  // breaks propagate without settling
    msg.entries.push_back(DsdvRouteAd{dest, kInfMetric, route.seq_num});
  }
  if (msg.entries.empty()) return;  // only active routes trigger
  Packet pkt = make_control(ControlVariant::DsdvUpdate, ctx_.self(), 1,
                            update_size(msg.entries.size()), ctx_.now(),
                            std::move(msg));
  ++triggered_updates_;
  ctx_.metrics().on_control_origin(ctx_.self(), ControlCounter::RuTri);
  ctx_.broadcast(pkt);
}

// Newly learned destinations are collected and flushed through one
// zero-delay event, so a whole update's worth of discoveries becomes a
// single triggered round instead of one per entry.
void DsdvProtocol::request_new_dest_ad(NodeId dest) {
  bool flush_scheduled = !pending_new_.empty();
  pending_new_.insert(dest);
  if (flush_scheduled) return;
  ctx_.schedule(0.0, [this] {
    DsdvUpdateMsg msg;
    msg.origin = ctx_.self();
    msg.full_dump = false;
    for (NodeId d : pending_new_) {
      auto it = table_.find(d);
      if (it == table_.end() || it->second.metric >= kInfMetric) continue;
      msg.entries.push_back(DsdvRouteAd{d, it->second.metric,
                                        it->second.seq_num});
    }
    pending_new_.clear();
    if (msg.entries.empty()) return;
    Packet pkt = make_control(ControlVariant::DsdvUpdate, ctx_.self(), 1,
                              update_size(msg.entries.size()), ctx_.now(),
                              std::move(msg));
    ++triggered_updates_;
    ctx_.metrics().on_control_origin(ctx_.self(), ControlCounter::RuTri);
    ctx_.broadcast(pkt);
  });
}

void DsdvProtocol::handle_packet(const Packet& pkt, NodeId from) {
  if (pkt.variant != ControlVariant::DsdvUpdate) return;
  process_update(control_body<DsdvUpdateMsg>(pkt), from);
}

void DsdvProtocol::process_update(const DsdvUpdateMsg& msg, NodeId from) {
  for (const DsdvRouteAd& ad : msg.entries) {
    if (ad.dest == ctx_.self()) continue;
    int cand = ad.metric >= kInfMetric ? kInfMetric : ad.metric + 1;
    auto it = table_.find(ad.dest);
    if (it == table_.end()) {
      adopt(ad.dest, from, cand, ad.seq_num);
      continue;
    }
    const Route& cur = it->second;
    if (ad.seq_num > cur.seq_num) {
      adopt(ad.dest, from, cand, ad.seq_num);
    } else if (ad.seq_num == cur.seq_num && cand < cur.metric) {
      adopt(ad.dest, from, cand, ad.seq_num);
    }
  }
}

void DsdvProtocol::adopt(NodeId dest, NodeId via, int metric,
                         std::uint32_t seq) {
  SimTime now = ctx_.now();
  auto it = table_.find(dest);
  bool is_new = it == table_.end();
  // Only metric changes engage the settling gate: advertisements carry
  // (dest, metric, seq), so an equal-metric next-hop swap cannot cause
  // advertisement fluctuation and is not damped.
  bool metric_changed = is_new || it->second.metric != metric;
  Route& route = table_[dest];
  route.next_hop = via;
  route.metric = metric;
  route.seq_num = seq;
  route.installed_at = now;
  if (is_new && metric < kInfMetric) {
    // Brand-new destinations skip the settling gate and go out right away
    // in an incremental update; only changes to known routes are damped.
    route.settle_until = 0.0;
    request_new_dest_ad(dest);
  } else if (metric >= kInfMetric) {
    route.settle_until = 0.0;
  } else if (metric_changed) {
    // Settling window restarts on every change.
    route.settle_until = now + cfg_.settling_time;
    if (!held_.empty() && held_.count(dest) && cfg_.settling_time > 0.0) {
      ctx_.schedule(cfg_.settling_time, [this, dest] { release_buffered(dest); });
    }
  }
}

std::optional<RouteEntry> DsdvProtocol::route_lookup(NodeId dest) const {
  if (dest == ctx_.self()) {
    return RouteEntry{dest, dest, 0, self_seq_, 0.0, true};
  }
  auto it = table_.find(dest);
  if (it == table_.end() || it->second.metric >= kInfMetric) {
    return std::nullopt;
  }
  const Route& r = it->second;
  return RouteEntry{dest, r.next_hop, r.metric, r.seq_num, r.installed_at,
                    r.settle_until <= ctx_.now()};
}

bool DsdvProtocol::hold_data(const Packet& pkt) {
  if (!cfg_.buffer_during_settling) return false;
  auto it = table_.find(pkt.dst);
  if (it == table_.end()) return false;
  const Route& route = it->second;
  if (route.metric >= kInfMetric || route.settle_until <= ctx_.now()) {
    return false;
  }
  auto& queue = held_[pkt.dst];
  if (static_cast<int>(queue.size()) >= cfg_.buffer_capacity) {
    ctx_.metrics().on_drop_buffer(pkt);
    return true;
  }
  queue.push_back(pkt);
  NodeId dest = pkt.dst;
  ctx_.schedule(route.settle_until - ctx_.now(),
                [this, dest] { release_buffered(dest); });
  return true;
}

void DsdvProtocol::release_buffered(NodeId dest) {
  auto it = held_.find(dest);
  if (it == held_.end() || it->second.empty()) return;
  auto route = table_.find(dest);
  if (route != table_.end() && route->second.metric < kInfMetric &&
      route->second.settle_until > ctx_.now()) {
    // Route flapped; wait for the restarted window.
    ctx_.schedule(route->second.settle_until - ctx_.now(),
                  [this, dest] { release_buffered(dest); });
    return;
  }
  std::deque<Packet> pending;
  pending.swap(it->second);
  held_.erase(it);
  for (Packet& pkt : pending) {
    ctx_.forward_data(std::move(pkt));
  }
}

}  // namespace manetsim
