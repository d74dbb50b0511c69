#include <doctest.h>

#include "manetsim/fsr.hpp"
#include "manetsim/network.hpp"
#include "support.hpp"

using namespace manetsim;
using namespace manetsim::test;

namespace {

Packet linkstate_from(NodeId origin, std::vector<NodeId> neighbors,
                      std::uint64_t ls_seq, int ttl) {
  FsrLinkStateMsg msg;
  msg.origin = origin;
  msg.neighbors = std::move(neighbors);
  msg.ls_seq = ls_seq;
  return make_control(ControlVariant::FsrLinkState, origin, ttl, 24, 0.0,
                      std::move(msg));
}

const FsrProtocol& fsr_at(Network& net, NodeId node) {
  return static_cast<const FsrProtocol&>(net.protocol(node));
}

}  // namespace

TEST_CASE("180 intra and 60 inter rounds over 900 s") {
  TestContext ctx(0);
  FsrProtocol p(ctx, FsrConfig{});
  p.start();
  ctx.sim().run_until(900.0);
  CHECK(ctx.metrics().origin_count(0, ControlCounter::Ias) == 180);
  CHECK(ctx.metrics().origin_count(0, ControlCounter::Ies) == 60);
  CHECK(ctx.broadcasts.size() == 240);
}

TEST_CASE("duplicate link-state floods are forwarded at most once") {
  TestContext ctx(0);
  FsrProtocol p(ctx, FsrConfig{});
  p.start();
  p.handle_packet(linkstate_from(7, {8, 9}, 5, 2), 8);
  CHECK(ctx.broadcasts.size() == 1);
  CHECK(ctx.broadcasts[0].ttl == 1);
  p.handle_packet(linkstate_from(7, {8, 9}, 5, 2), 9);
  CHECK(ctx.broadcasts.size() == 1);
  // A fresher sequence floods again.
  p.handle_packet(linkstate_from(7, {8}, 6, 2), 8);
  CHECK(ctx.broadcasts.size() == 2);
}

TEST_CASE("expired ttl stops the scoped flood") {
  TestContext ctx(0);
  FsrProtocol p(ctx, FsrConfig{});
  p.start();
  p.handle_packet(linkstate_from(7, {8}, 1, 1), 8);
  CHECK(ctx.broadcasts.empty());
  CHECK(p.database().count(7) == 1);  // stored even when not forwarded
}

TEST_CASE("link events mutate state but never transmit") {
  TestContext ctx(0);
  FsrProtocol p(ctx, FsrConfig{});
  p.start();
  for (int i = 0; i < 10; ++i) {
    p.handle_link_event(LinkEvent{0, 1, i % 2 == 0, 0.0});
    p.handle_link_event(LinkEvent{0, 2, true, 0.0});
  }
  CHECK(ctx.broadcasts.empty());

  // The next periodic tick carries the resulting neighbor set.
  ctx.sim().run_until(5.0);
  REQUIRE(ctx.broadcasts.size() == 1);
  const auto& msg = control_body<FsrLinkStateMsg>(ctx.broadcasts[0]);
  CHECK(msg.neighbors == std::vector<NodeId>{2});
}

TEST_CASE("stale records never overwrite fresher ones") {
  TestContext ctx(0);
  FsrProtocol p(ctx, FsrConfig{});
  p.start();
  p.handle_packet(linkstate_from(7, {8}, 6, 1), 8);
  p.handle_packet(linkstate_from(7, {8, 9}, 4, 1), 8);
  REQUIRE(p.database().count(7) == 1);
  CHECK(p.database().at(7).ls_seq == 6);
  CHECK(p.database().at(7).neighbors == std::vector<NodeId>{8});
}

TEST_CASE("intra-scope records stop at the ttl boundary") {
  // Line 0-1-2-3-4, spacing 200 m: only adjacent nodes are in range.
  auto cfg = static_scenario(ProtocolKind::Fsr, 5, line_positions(5, 200.0),
                             30.0);
  Network net(cfg);
  net.run_until(6.0);  // one intra round (t = 5) has fully propagated
  CHECK(fsr_at(net, 1).database().count(0) == 1);
  CHECK(fsr_at(net, 2).database().count(0) == 1);
  CHECK(fsr_at(net, 3).database().count(0) == 0);
  CHECK(fsr_at(net, 4).database().count(0) == 0);
}

TEST_CASE("inter-scope round reaches the whole component") {
  auto cfg = static_scenario(ProtocolKind::Fsr, 5, line_positions(5, 200.0),
                             30.0);
  Network net(cfg);
  net.run_until(16.0);  // one inter round (t = 15) has fully propagated
  for (NodeId node = 0; node < 5; ++node) {
    for (NodeId origin = 0; origin < 5; ++origin) {
      CHECK(fsr_at(net, node).database().count(origin) == 1);
    }
  }
  // Routes now match the line topology.
  auto r = net.protocol(0).route_lookup(4);
  REQUIRE(r.has_value());
  CHECK(r->metric == 4);
  CHECK(r->next_hop == 1);
}

TEST_CASE("floods never cross a partition") {
  std::vector<Position> pos = {{0, 0}, {200, 0}, {5000, 0}, {5200, 0}};
  auto cfg = static_scenario(ProtocolKind::Fsr, 4, pos, 30.0);
  Network net(cfg);
  net.run_until(20.0);
  CHECK(fsr_at(net, 0).database().count(1) == 1);
  CHECK(fsr_at(net, 0).database().count(2) == 0);
  CHECK(fsr_at(net, 0).database().count(3) == 0);
  CHECK(fsr_at(net, 3).database().count(2) == 1);
  CHECK(fsr_at(net, 3).database().count(0) == 0);
}
