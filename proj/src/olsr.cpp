#include "manetsim/olsr.hpp"

#include <algorithm>
#include <bit>
#include <vector>

namespace manetsim {

namespace {

// Flat-array MPR cover over (neighbor id, reached set) pairs sorted by id.
// Runs on every meaningful HELLO, so it avoids per-iteration set copies.
std::set<NodeId> select_mprs_impl(
    NodeId self,
    const std::vector<std::pair<NodeId, const std::set<NodeId>*>>& n1) {
  const std::size_t k = n1.size();
  std::vector<NodeId> n1_ids(k);
  for (std::size_t i = 0; i < k; ++i) n1_ids[i] = n1[i].first;

  std::vector<NodeId> n2;
  for (const auto& [nb, reached] : n1) {
    for (NodeId w : *reached) {
      if (w != self &&
          !std::binary_search(n1_ids.begin(), n1_ids.end(), w)) {
        n2.push_back(w);
      }
    }
  }
  std::sort(n2.begin(), n2.end());
  n2.erase(std::unique(n2.begin(), n2.end()), n2.end());

  // Coverage as bitmasks over n2 indices.
  const std::size_t words = (n2.size() + 63) / 64;
  std::vector<std::uint64_t> cover(k * words, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (NodeId w : *n1[i].second) {
      auto it = std::lower_bound(n2.begin(), n2.end(), w);
      if (it == n2.end() || *it != w) continue;
      std::size_t j = static_cast<std::size_t>(it - n2.begin());
      cover[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
    }
  }

  std::vector<char> is_mpr(k, 0);
  std::vector<std::uint64_t> covered(words, 0);
  std::size_t uncovered = n2.size();
  auto mark = [&](std::size_t i) {
    is_mpr[i] = 1;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t fresh = cover[i * words + w] & ~covered[w];
      covered[w] |= fresh;
      uncovered -= static_cast<std::size_t>(std::popcount(fresh));
    }
  };

  // Sole reachers first.
  for (std::size_t j = 0; j < n2.size(); ++j) {
    std::uint64_t bit = std::uint64_t{1} << (j % 64);
    std::size_t only = k;
    int count = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (cover[i * words + j / 64] & bit) {
        only = i;
        if (++count > 1) break;
      }
    }
    if (count == 1 && !is_mpr[only]) mark(only);
  }

  // Then greedy max-coverage; ties by larger degree, then smaller id.
  while (uncovered > 0) {
    std::size_t best = k;
    NodeId best_nb = kBroadcastId;
    std::size_t best_cover = 0;
    std::size_t best_degree = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (is_mpr[i]) continue;
      std::size_t c = 0;
      for (std::size_t w = 0; w < words; ++w) {
        c += static_cast<std::size_t>(
            std::popcount(cover[i * words + w] & ~covered[w]));
      }
      std::size_t degree = n1[i].second->size();
      if (c > best_cover ||
          (c == best_cover && c > 0 &&
           (degree > best_degree ||
            (degree == best_degree && n1[i].first < best_nb)))) {
        best = i;
        best_nb = n1[i].first;
        best_cover = c;
        best_degree = degree;
      }
    }
    if (best == k || best_cover == 0) break;
    mark(best);
  }

  std::set<NodeId> mprs;
  for (std::size_t i = 0; i < k; ++i) {
    if (is_mpr[i]) mprs.insert(n1[i].first);
  }
  return mprs;
}

}  // namespace

std::set<NodeId> select_mprs(
    NodeId self, const std::map<NodeId, std::set<NodeId>>& two_hop_of) {
  std::vector<std::pair<NodeId, const std::set<NodeId>*>> n1;
  n1.reserve(two_hop_of.size());
  for (const auto& [nb, reached] : two_hop_of) n1.emplace_back(nb, &reached);
  return select_mprs_impl(self, n1);
}

OlsrProtocol::OlsrProtocol(ProtocolContext& ctx, const OlsrConfig& cfg)
    : Protocol(ctx), cfg_(cfg), topology_hold_(3.0 * cfg.tc_interval) {}

void OlsrProtocol::start() {
  ctx_.schedule(cfg_.hello_interval, [this] { hello_tick(); });
  std::uint64_t gen = tc_timer_gen_;
  ctx_.schedule(cfg_.tc_interval, [this, gen] { tc_tick(gen); });
}

void OlsrProtocol::hello_tick() {
  expire_neighbors();
  OlsrHelloMsg msg;
  msg.origin = ctx_.self();
  for (const auto& [id, nb] : neighbors_) {
    msg.links.push_back(
        OlsrHelloMsg::Link{id, nb.symmetric, mpr_set_.count(id) > 0});
  }
  int size = 12 + 4 * static_cast<int>(msg.links.size());
  // HELLOs carry ttl 1 and are never forwarded.
  Packet pkt = make_control(ControlVariant::OlsrHello, ctx_.self(), 1, size,
                            ctx_.now(), std::move(msg));
  ctx_.metrics().on_control_origin(ctx_.self(), ControlCounter::Hello);
  ctx_.broadcast(pkt);
  ctx_.schedule(cfg_.hello_interval, [this] { hello_tick(); });
}

void OlsrProtocol::tc_tick(std::uint64_t generation) {
  if (generation != tc_timer_gen_) return;  // superseded by a triggered TC
  if (!mpr_selectors_.empty()) {
    emit_tc(false);
  } else {
    ctx_.schedule(cfg_.tc_interval,
                  [this, generation] { tc_tick(generation); });
  }
}

void OlsrProtocol::emit_tc(bool triggered) {
  if (triggered) ++triggered_tcs_;
  OlsrTcMsg msg;
  msg.origin = ctx_.self();
  msg.ansn = ansn_;
  msg.emission = ++tc_emission_;
  msg.selectors.assign(mpr_selectors_.begin(), mpr_selectors_.end());
  int size = 12 + 4 * static_cast<int>(msg.selectors.size());
  Packet pkt = make_control(ControlVariant::OlsrTc, ctx_.self(), 255, size,
                            ctx_.now(), std::move(msg));
  ctx_.metrics().on_control_origin(ctx_.self(), ControlCounter::Tc);
  ctx_.broadcast(pkt);
  // Triggered or periodic, an emission resets the periodic timer.
  std::uint64_t gen = ++tc_timer_gen_;
  ctx_.schedule(cfg_.tc_interval, [this, gen] { tc_tick(gen); });
}

void OlsrProtocol::handle_packet(const Packet& pkt, NodeId from) {
  if (pkt.variant == ControlVariant::OlsrHello) {
    process_hello(control_body<OlsrHelloMsg>(pkt), from);
  } else if (pkt.variant == ControlVariant::OlsrTc) {
    process_tc(pkt, from);
  }
}

void OlsrProtocol::process_hello(const OlsrHelloMsg& msg, NodeId from) {
  auto [it, inserted] = neighbors_.try_emplace(from);
  Neighbor& nb = it->second;
  nb.last_heard = ctx_.now();
  bool symmetric = nb.symmetric;
  std::set<NodeId> two_hop;
  bool selects_me = false;
  for (const auto& link : msg.links) {
    if (link.id == ctx_.self()) {
      symmetric = true;  // reciprocal HELLO confirms the link
      selects_me = link.mpr;
      continue;
    }
    two_hop.insert(link.id);
  }
  // Recompute MPRs and routes only when the HELLO carries news; the steady
  // state is dominated by refreshes that change nothing.
  bool changed =
      inserted || symmetric != nb.symmetric || two_hop != nb.two_hop;
  nb.symmetric = symmetric;
  nb.two_hop = std::move(two_hop);

  std::set<NodeId> selectors = mpr_selectors_;
  if (selects_me) {
    selectors.insert(from);
  } else {
    selectors.erase(from);
  }
  set_selectors(std::move(selectors));
  if (changed) {
    recompute_mprs();
    routes_dirty_ = true;
  }
}

void OlsrProtocol::set_selectors(std::set<NodeId> selectors) {
  if (selectors == mpr_selectors_) return;
  mpr_selectors_ = std::move(selectors);
  ++ansn_;  // ansn advances exactly when the selector set changes
  request_triggered_tc();
}

// Triggered TCs are emitted through a zero-delay event so that several
// changes landing in the same instant (e.g. simultaneous HELLOs) coalesce
// into a single round.
void OlsrProtocol::request_triggered_tc() {
  if (tc_pending_) return;
  tc_pending_ = true;
  ctx_.schedule(0.0, [this] {
    tc_pending_ = false;
    emit_tc(true);
  });
}

void OlsrProtocol::recompute_mprs() {
  std::vector<std::pair<NodeId, const std::set<NodeId>*>> n1;
  n1.reserve(neighbors_.size());
  for (const auto& [id, nb] : neighbors_) {
    if (nb.symmetric) n1.emplace_back(id, &nb.two_hop);
  }
  std::set<NodeId> mprs = select_mprs_impl(ctx_.self(), n1);
  if (mprs != mpr_set_) {
    mpr_set_ = std::move(mprs);
    request_triggered_tc();  // unstable MPRs trigger a TC round
  }
}

void OlsrProtocol::process_tc(const Packet& pkt, NodeId from) {
  const auto& msg = control_body<OlsrTcMsg>(pkt);
  if (msg.origin == ctx_.self()) return;

  TopologyEntry& entry = topology_[msg.origin];
  if (msg.ansn < entry.ansn) return;  // stale
  std::set<NodeId> selectors(msg.selectors.begin(), msg.selectors.end());
  // Refreshes of an unchanged, unexpired set only push the expiry out.
  if (selectors != entry.selectors || entry.expires < ctx_.now()) {
    routes_dirty_ = true;
  }
  entry.ansn = msg.ansn;
  entry.selectors = std::move(selectors);
  entry.expires = ctx_.now() + topology_hold_;

  // MPR forwarding rule: only MPRs of the transmitter re-forward, once per
  // emission.
  if (!mpr_selectors_.count(from)) return;
  if (pkt.ttl - 1 <= 0) return;
  auto fwd = forwarded_.find(msg.origin);
  if (fwd != forwarded_.end() && msg.emission <= fwd->second) return;
  forwarded_[msg.origin] = msg.emission;
  Packet copy = pkt;
  copy.ttl = pkt.ttl - 1;
  copy.src = ctx_.self();
  ctx_.broadcast(copy);
}

void OlsrProtocol::expire_neighbors() {
  bool changed = false;
  SimTime now = ctx_.now();
  for (auto it = topology_.begin(); it != topology_.end();) {
    if (it->second.expires < now) {
      it = topology_.erase(it);
      routes_dirty_ = true;
    } else {
      ++it;
    }
  }
  for (auto it = neighbors_.begin(); it != neighbors_.end();) {
    if (now - it->second.last_heard > cfg_.neighbor_hold) {
      it = neighbors_.erase(it);
      changed = true;
    } else {
      ++it;
    }
  }
  if (changed) {
    recompute_mprs();
    routes_dirty_ = true;
  }
}

void OlsrProtocol::handle_link_event(const LinkEvent& ev) {
  // OLSR senses links through HELLOs only; a failed data unicast forces the
  // neighbor to expire immediately.
  if (ev.up) return;
  if (neighbors_.erase(ev.neighbor) > 0) {
    recompute_mprs();
    routes_dirty_ = true;
  }
}

const std::map<NodeId, RouteEntry>& OlsrProtocol::routes() const {
  if (!routes_dirty_) return routes_;
  std::map<NodeId, std::vector<NodeId>> adjacency;
  auto& self_adj = adjacency[ctx_.self()];
  for (const auto& [id, nb] : neighbors_) {
    if (!nb.symmetric) continue;
    self_adj.push_back(id);
    adjacency[id].assign(nb.two_hop.begin(), nb.two_hop.end());
  }
  SimTime now = ctx_.now();
  for (const auto& [origin, entry] : topology_) {
    if (entry.expires < now) continue;
    auto& adj = adjacency[origin];
    adj.insert(adj.end(), entry.selectors.begin(), entry.selectors.end());
  }
  routes_ = compute_hop_routes(ctx_.self(), adjacency, now);
  routes_dirty_ = false;
  return routes_;
}

std::optional<RouteEntry> OlsrProtocol::route_lookup(NodeId dest) const {
  const auto& table = routes();
  auto it = table.find(dest);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

}  // namespace manetsim
