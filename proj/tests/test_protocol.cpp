#include <doctest.h>

#include "manetsim/dsdv.hpp"
#include "manetsim/fsr.hpp"
#include "manetsim/network.hpp"
#include "manetsim/olsr.hpp"
#include "manetsim/protocol.hpp"
#include "support.hpp"

using namespace manetsim;
using namespace manetsim::test;

namespace {

std::map<NodeId, std::vector<NodeId>> unit_disk_adjacency(
    const std::vector<Position>& pos, double range) {
  std::map<NodeId, std::vector<NodeId>> adj;
  int n = static_cast<int>(pos.size());
  for (int i = 0; i < n; ++i) {
    adj[i];
    for (int j = 0; j < n; ++j) {
      if (i != j && in_range(pos[i], pos[j], range)) adj[i].push_back(j);
    }
  }
  return adj;
}

}  // namespace

TEST_CASE("hop routing agrees with the all-pairs oracle on random graphs") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto pos = random_connected_positions(9, 500.0, 250.0, seed);
    auto oracle = oracle_hop_counts(pos, 250.0);
    auto adj = unit_disk_adjacency(pos, 250.0);
    for (int self = 0; self < 9; ++self) {
      auto routes = compute_hop_routes(self, adj, 0.0);
      for (int dest = 0; dest < 9; ++dest) {
        REQUIRE(routes.count(dest) == 1);
        CHECK(routes.at(dest).metric == oracle[self][dest]);
      }
    }
  }
}

TEST_CASE("equal-length paths pick the smallest next-hop id") {
  // Square 0-1-3-2-0: two 2-hop paths from 0 to 3, via 1 or via 2.
  std::map<NodeId, std::vector<NodeId>> adj{
      {0, {1, 2}}, {1, {0, 3}}, {2, {0, 3}}, {3, {1, 2}}};
  auto routes = compute_hop_routes(0, adj, 0.0);
  REQUIRE(routes.count(3) == 1);
  CHECK(routes.at(3).metric == 2);
  CHECK(routes.at(3).next_hop == 1);
}

TEST_CASE("self route is metric 0 for every protocol") {
  {
    TestContext ctx(4);
    DsdvProtocol p(ctx, DsdvConfig{});
    p.start();
    auto r = p.route_lookup(4);
    REQUIRE(r.has_value());
    CHECK(r->metric == 0);
    CHECK(r->next_hop == 4);
  }
  {
    TestContext ctx(4);
    FsrProtocol p(ctx, FsrConfig{});
    p.start();
    auto r = p.route_lookup(4);
    REQUIRE(r.has_value());
    CHECK(r->metric == 0);
  }
  {
    TestContext ctx(4);
    OlsrProtocol p(ctx, OlsrConfig{});
    p.start();
    auto r = p.route_lookup(4);
    REQUIRE(r.has_value());
    CHECK(r->metric == 0);
  }
}

TEST_CASE("forward_data delivers along an installed route") {
  auto cfg = static_scenario(ProtocolKind::Dsdv, 2,
                             {{0, 0}, {200, 0}}, 30.0);
  Network net(cfg);
  net.run_until(1.0);  // LSM up event installs the 1-hop route
  net.inject_data(0, 1, 0, 0);
  net.run_until(30.0);
  auto rec = net.finalize();
  CHECK(rec.sent == 1);
  CHECK(rec.delivered == 1);
}

TEST_CASE("missing route becomes an accounted drop") {
  auto cfg = static_scenario(ProtocolKind::Dsdv, 2,
                             {{0, 0}, {900, 900}}, 30.0);
  Network net(cfg);
  net.run_until(1.0);
  net.inject_data(0, 1, 0, 0);
  net.run_until(30.0);
  auto rec = net.finalize();
  CHECK(rec.sent == 1);
  CHECK(rec.delivered == 0);
  CHECK(rec.dropped_no_route == 1);
}

TEST_CASE("exhausted ttl at an intermediate node becomes a ttl drop") {
  auto cfg = static_scenario(ProtocolKind::Dsdv, 3,
                             {{0, 0}, {200, 0}, {400, 0}}, 40.0);
  Network net(cfg);
  net.run_until(20.0);  // one periodic dump propagates the 2-hop route
  REQUIRE(net.protocol(0).route_lookup(2).has_value());

  Packet pkt;
  pkt.kind = PacketKind::Data;
  pkt.src = 0;
  pkt.origin = 0;
  pkt.dst = 2;
  pkt.ttl = 0;
  pkt.size = 512;
  pkt.flow = 0;
  pkt.payload_seq = 0;
  pkt.uid = 1;
  pkt.created_at = net.sim().now();
  net.metrics().on_data_sent(pkt);
  net.forward_data(0, pkt);
  net.run_until(40.0);
  auto rec = net.finalize();
  CHECK(rec.dropped_ttl == 1);
}
