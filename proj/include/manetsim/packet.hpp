#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "manetsim/sim.hpp"

namespace manetsim {

using NodeId = int;
constexpr NodeId kBroadcastId = -1;

/// Hop-count metric marking an invalidated route.
constexpr int kInfMetric = 1 << 20;

/// Data packets keep their initial TTL below any path length at desk scale.
constexpr int kDataTtl = 32;

enum class PacketKind { Data, Control };

enum class ControlVariant {
  DsdvUpdate,
  FsrLinkState,
  OlsrHello,
  OlsrTc,
};

struct DsdvRouteAd {
  NodeId dest;
  int metric;  // kInfMetric marks a broken route
  std::uint32_t seq_num;
};

struct DsdvUpdateMsg {
  NodeId origin;
  std::vector<DsdvRouteAd> entries;
  bool full_dump = true;
};

struct FsrLinkStateMsg {
  NodeId origin;
  std::vector<NodeId> neighbors;
  std::uint64_t ls_seq = 0;
};

struct OlsrHelloMsg {
  struct Link {
    NodeId id;
    bool symmetric;
    bool mpr;  // sender selected this neighbor as MPR
  };
  NodeId origin;
  std::vector<Link> links;
};

struct OlsrTcMsg {
  NodeId origin;
  std::uint32_t ansn = 0;
  std::uint64_t emission = 0;  // per-origin emission counter, for flood dedup
  std::vector<NodeId> selectors;
};

using ControlBody = std::variant<std::monostate, DsdvUpdateMsg,
                                 FsrLinkStateMsg, OlsrHelloMsg, OlsrTcMsg>;

struct Packet {
  PacketKind kind = PacketKind::Data;
  ControlVariant variant = ControlVariant::DsdvUpdate;  // control only
  NodeId src = kBroadcastId;     // transmitter of this hop
  NodeId origin = kBroadcastId;  // original creator
  NodeId dst = kBroadcastId;
  int ttl = kDataTtl;
  int size = 0;  // bytes, > 0
  int flow = -1;                  // data only
  std::uint64_t payload_seq = 0;  // data only, per flow
  std::uint64_t uid = 0;          // data only, lifecycle accounting
  SimTime created_at = 0.0;
  std::shared_ptr<const ControlBody> body;  // control only
};

template <typename T>
const T& control_body(const Packet& pkt) {
  return std::get<T>(*pkt.body);
}

template <typename T>
Packet make_control(ControlVariant variant, NodeId origin, int ttl, int size,
                    SimTime now, T body) {
  Packet pkt;
  pkt.kind = PacketKind::Control;
  pkt.variant = variant;
  pkt.src = origin;
  pkt.origin = origin;
  pkt.dst = kBroadcastId;
  pkt.ttl = ttl;
  pkt.size = size;
  pkt.created_at = now;
  pkt.body = std::make_shared<const ControlBody>(std::move(body));
  return pkt;
}

}  // namespace manetsim
