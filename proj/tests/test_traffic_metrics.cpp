#include <doctest.h>

#include <stdexcept>

#include "manetsim/metrics.hpp"
#include "manetsim/traffic.hpp"

using namespace manetsim;

namespace {

Packet data_packet(int flow, std::uint64_t seq, SimTime created_at,
                   int size = 512) {
  Packet pkt;
  pkt.kind = PacketKind::Data;
  pkt.flow = flow;
  pkt.payload_seq = seq;
  pkt.size = size;
  pkt.created_at = created_at;
  return pkt;
}

}  // namespace

TEST_CASE("cbr source injects rate x window packets") {
  Simulator sim;
  std::uint64_t injected = 0;
  CbrSource src(sim, FlowConfig{0, 1, 4.0, 512, 0.0, 10.0},
                [&](std::uint64_t) { ++injected; });
  src.start();
  sim.run_until(20.0);
  CHECK(injected == 40);
}

TEST_CASE("cbr source respects a delayed start") {
  Simulator sim;
  std::vector<SimTime> at;
  CbrSource src(sim, FlowConfig{0, 1, 2.0, 512, 5.0, 8.0},
                [&](std::uint64_t) { at.push_back(sim.now()); });
  src.start();
  sim.run_until(20.0);
  REQUIRE(at.size() == 6);
  CHECK(at.front() == 5.0);
  CHECK(at.back() < 8.0);
}

TEST_CASE("offered load per flow") {
  CHECK(offered_load_bps(FlowConfig{0, 1, 20.0, 512, 0.0, 10.0}) ==
        doctest::Approx(81920.0));
}

TEST_CASE("flow config invariants") {
  CHECK_THROWS_AS(FlowConfig({0, 0, 4.0, 512, 0.0, 10.0}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(FlowConfig({0, 1, 0.0, 512, 0.0, 10.0}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(FlowConfig({0, 1, 4.0, 512, 10.0, 10.0}).validate(),
                  std::invalid_argument);
}

TEST_CASE("delay samples come from creation to delivery") {
  MetricsCollector m(2);
  Packet pkt = data_packet(0, 0, 10.0);
  m.on_data_sent(pkt);
  m.on_delivery(pkt, 10.3);
  auto rec = m.finalize(900.0);
  CHECK(rec.ct_samples == 1);
  REQUIRE(rec.ct_mean.has_value());
  CHECK(*rec.ct_mean == doctest::Approx(0.3));
}

TEST_CASE("no deliveries leave ct_mean empty, not zero") {
  MetricsCollector m(2);
  auto rec = m.finalize(900.0);
  CHECK_FALSE(rec.ct_mean.has_value());
  CHECK(rec.throughput_bps == 0.0);
}

TEST_CASE("throughput is delivered bits over the duration") {
  MetricsCollector m(2);
  for (std::uint64_t i = 0; i < 100; ++i) {
    Packet pkt = data_packet(0, i, 0.0);
    m.on_data_sent(pkt);
    m.on_delivery(pkt, 1.0);
  }
  auto rec = m.finalize(900.0);
  CHECK(rec.throughput_bps == doctest::Approx(455.111).epsilon(0.001));
}

TEST_CASE("duplicate deliveries count once and are logged") {
  MetricsCollector m(2);
  Packet pkt = data_packet(3, 7, 0.0);
  m.on_data_sent(pkt);
  m.on_delivery(pkt, 1.0);
  m.on_delivery(pkt, 2.0);
  auto rec = m.finalize(10.0);
  CHECK(rec.delivered == 1);
  CHECK(rec.duplicates == 1);
  CHECK(rec.ct_samples == 1);
}

TEST_CASE("conservation holds across mixed outcomes") {
  MetricsCollector m(2);
  for (std::uint64_t i = 0; i < 40; ++i) {
    m.on_data_sent(data_packet(0, i, 0.0));
  }
  for (std::uint64_t i = 0; i < 38; ++i) {
    m.on_delivery(data_packet(0, i, 0.0), 1.0);
  }
  m.on_drop_no_route(data_packet(0, 38, 0.0));
  m.on_drop_no_route(data_packet(0, 39, 0.0));
  auto rec = m.finalize(10.0);
  CHECK(rec.sent == 40);
  CHECK(rec.delivered == 38);
  CHECK(rec.dropped_no_route == 2);
  CHECK(rec.in_flight_at_end == 0);
}

TEST_CASE("a fabricated delivery makes finalize abort") {
  MetricsCollector m(2);
  m.on_data_sent(data_packet(0, 0, 0.0));
  m.corrupt_delivered_counter();
  CHECK_THROWS_AS(m.finalize(10.0), std::logic_error);
}

TEST_CASE("control accounting tracks transmissions, bytes and origins") {
  MetricsCollector m(3);
  m.enable_tx_log();
  Packet pkt;
  pkt.kind = PacketKind::Control;
  pkt.variant = ControlVariant::OlsrHello;
  pkt.origin = 1;
  pkt.size = 20;
  m.on_control_tx(1, pkt, 4.0);
  m.on_control_origin(1, ControlCounter::Hello);
  Packet fwd = pkt;
  m.on_control_tx(2, fwd, 4.1);  // forwarded copy: tx counted, no origin
  auto rec = m.finalize(10.0);
  CHECK(rec.ce_control_tx == 2);
  CHECK(rec.ce_control_bytes == 40);
  CHECK(m.origin_count(1, ControlCounter::Hello) == 1);
  CHECK(m.origin_count(2, ControlCounter::Hello) == 0);
  CHECK(m.total_origin_count(ControlCounter::Hello) == 1);
  REQUIRE(m.tx_log().size() == 2);
  CHECK_FALSE(m.tx_log()[0].forwarded);
  CHECK(m.tx_log()[1].forwarded);
}
