#include "manetsim/network.hpp"

#include <stdexcept>

#include "manetsim/dsdv.hpp"
#include "manetsim/fsr.hpp"
#include "manetsim/olsr.hpp"
#include "manetsim/traffic.hpp"

namespace manetsim {

class Network::Context : public ProtocolContext {
 public:
  Context(Network& net, NodeId id) : net_(net), id_(id) {}

  NodeId self() const override { return id_; }
  SimTime now() const override { return net_.sim_.now(); }
  void broadcast(const Packet& pkt) override {
    net_.medium_->broadcast(id_, pkt);
  }
  Medium::UnicastResult unicast(NodeId next_hop, const Packet& pkt) override {
    return net_.medium_->unicast(id_, next_hop, pkt);
  }
  void schedule(double delay, std::function<void()> fn) override {
    net_.sim_.schedule(net_.sim_.now() + delay, std::move(fn));
  }
  void forward_data(Packet pkt) override {
    net_.forward_data(id_, std::move(pkt));
  }
  MetricsCollector& metrics() override { return net_.metrics_; }
  const ScenarioConfig& config() const override { return net_.cfg_; }

 private:
  Network& net_;
  NodeId id_;
};

Network::~Network() = default;

Network::Network(const ScenarioConfig& cfg)
    : cfg_(cfg), rng_(cfg.seed), metrics_(cfg.n) {
  cfg_.validate();

  // RNG consumption order: placement, then flow endpoints, then runtime
  // draws in dispatch order.
  mobility_ = std::make_unique<RandomWaypoint>(cfg_.n, cfg_.field_side,
                                               cfg_.speed, cfg_.pause, rng_);
  if (cfg_.fixed_positions) {
    mobility_->set_positions(*cfg_.fixed_positions);
  }

  if (cfg_.fixed_flows) {
    flow_pairs_ = *cfg_.fixed_flows;
  } else {
    for (int f = 0; f < cfg_.flows; ++f) {
      int src = rng_.uniform_int(0, cfg_.n - 1);
      int dst = rng_.uniform_int(0, cfg_.n - 2);
      if (dst >= src) ++dst;
      flow_pairs_.emplace_back(src, dst);
    }
  }
  for (auto [src, dst] : flow_pairs_) {
    if (src < 0 || src >= cfg_.n || dst < 0 || dst >= cfg_.n || src == dst) {
      throw std::invalid_argument("Network: invalid flow endpoints");
    }
  }

  RadioParams radio;
  radio.range = cfg_.range;
  radio.bandwidth = cfg_.bandwidth;
  radio.jitter_max = cfg_.jitter_max;
  radio.lsm_interval = cfg_.lsm_interval;
  medium_ = std::make_unique<Medium>(
      sim_, rng_, radio, cfg_.n,
      [this](NodeId node, SimTime now) { return mobility_->position(node, now); },
      [this](NodeId to, Packet pkt, NodeId from) {
        deliver(to, std::move(pkt), from);
      },
      &metrics_);

  nodes_.resize(cfg_.n);
  for (NodeId id = 0; id < cfg_.n; ++id) {
    nodes_[id].ctx = std::make_unique<Context>(*this, id);
    switch (cfg_.protocol) {
      case ProtocolKind::Dsdv:
        nodes_[id].proto =
            std::make_unique<DsdvProtocol>(*nodes_[id].ctx, cfg_.dsdv);
        break;
      case ProtocolKind::Fsr:
        nodes_[id].proto =
            std::make_unique<FsrProtocol>(*nodes_[id].ctx, cfg_.fsr);
        break;
      case ProtocolKind::Olsr:
      case ProtocolKind::OlsrM:
        nodes_[id].proto =
            std::make_unique<OlsrProtocol>(*nodes_[id].ctx, cfg_.active_olsr());
        break;
    }
  }
}

void Network::start() {
  if (started_) return;
  started_ = true;

  mobility_->attach(sim_, rng_, cfg_.duration);
  for (NodeId id = 0; id < cfg_.n; ++id) {
    nodes_[id].proto->start();
  }
  // MAC link sensing feeds DSDV and FSR; OLSR relies on HELLO expiry.
  if (cfg_.protocol == ProtocolKind::Dsdv ||
      cfg_.protocol == ProtocolKind::Fsr) {
    for (NodeId id = 0; id < cfg_.n; ++id) {
      schedule_lsm(id);
    }
  }
  for (std::size_t f = 0; f < flow_pairs_.size(); ++f) {
    schedule_flow_tick(static_cast<int>(f));
  }
}

void Network::run() {
  start();
  sim_.run_until(cfg_.duration);
}

void Network::run_until(SimTime t) {
  start();
  sim_.run_until(t);
}

void Network::schedule_lsm(NodeId node) {
  sim_.schedule(sim_.now() + cfg_.lsm_interval, [this, node] {
    for (const LinkEvent& ev : medium_->lsm_tick(node)) {
      nodes_[node].proto->handle_link_event(ev);
    }
    schedule_lsm(node);
  });
}

void Network::schedule_flow_tick(int flow) {
  auto [src, dst] = flow_pairs_[flow];
  FlowConfig fc{src, dst, cfg_.flow_rate, cfg_.pkt_size, cfg_.flow_start,
                cfg_.flow_stop.value_or(cfg_.duration)};
  auto source = std::make_unique<CbrSource>(
      sim_, fc, [this, flow](std::uint64_t payload_seq) {
        auto [s, d] = flow_pairs_[flow];
        inject_data(s, d, flow, payload_seq);
      });
  source->start();
  sources_.push_back(std::move(source));
}

void Network::inject_data(NodeId src, NodeId dst, int flow,
                          std::uint64_t payload_seq) {
  Packet pkt;
  pkt.kind = PacketKind::Data;
  pkt.src = src;
  pkt.origin = src;
  pkt.dst = dst;
  pkt.ttl = kDataTtl;
  pkt.size = cfg_.pkt_size;
  pkt.flow = flow;
  pkt.payload_seq = payload_seq;
  pkt.uid = next_uid_++;
  pkt.created_at = sim_.now();
  metrics_.on_data_sent(pkt);
  forward_data(src, std::move(pkt));
}

void Network::forward_data(NodeId node, Packet pkt) {
  Protocol& proto = *nodes_.at(node).proto;
  if (pkt.dst == node) {
    metrics_.on_delivery(pkt, sim_.now());
    return;
  }
  if (proto.hold_data(pkt)) return;  // protocol buffered or accounted it

  auto route = proto.route_lookup(pkt.dst);
  if (!route) {
    metrics_.on_drop_no_route(pkt);
    return;
  }
  if (pkt.ttl <= 0) {
    metrics_.on_drop_ttl(pkt);
    return;
  }
  pkt.ttl -= 1;
  pkt.src = node;
  auto result = medium_->unicast(node, route->next_hop, pkt);
  if (result == Medium::UnicastResult::Delivered) return;

  // MAC feedback: notify the protocol, then one immediate re-lookup.
  proto.handle_link_event(LinkEvent{node, route->next_hop, false, sim_.now()});
  auto retry = proto.route_lookup(pkt.dst);
  if (retry && retry->next_hop != route->next_hop) {
    if (medium_->unicast(node, retry->next_hop, pkt) ==
        Medium::UnicastResult::Delivered) {
      return;
    }
  }
  metrics_.on_drop_no_route(pkt);
}

void Network::deliver(NodeId to, Packet pkt, NodeId from) {
  if (pkt.kind == PacketKind::Control) {
    nodes_.at(to).proto->handle_packet(pkt, from);
    return;
  }
  forward_data(to, std::move(pkt));
}

}  // namespace manetsim
