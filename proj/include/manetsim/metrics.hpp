#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "manetsim/packet.hpp"

namespace manetsim {

/// Per-run output row.
struct MetricsRecord {
  double throughput_bps = 0.0;
  std::optional<double> ct_mean;  // empty when no deliveries, never a fake 0
  std::uint64_t ct_samples = 0;
  std::uint64_t ce_control_tx = 0;     // every control transmission, forwards included
  std::uint64_t ce_control_bytes = 0;
  std::uint64_t sent = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped_no_route = 0;
  std::uint64_t dropped_ttl = 0;
  std::uint64_t dropped_buffer = 0;
  std::uint64_t in_flight_at_end = 0;
  std::uint64_t duplicates = 0;
};

/// Origination sub-counters, one slot per control message family. These
/// count dissemination rounds (originations), matching the analytic model;
/// forwarded copies show up only in ce_control_tx.
enum class ControlCounter : int {
  RuPer = 0,
  RuTri = 1,
  Hello = 2,
  Tc = 3,
  Ias = 4,
  Ies = 5,
};
constexpr int kControlCounterCount = 6;

struct TxLogEntry {
  SimTime at;
  NodeId node;     // transmitter
  NodeId origin;
  ControlVariant variant;
  bool forwarded;  // node != origin
};

class MetricsCollector {
 public:
  explicit MetricsCollector(int n_nodes) : origin_tx_(n_nodes) {}

  // --- data lifecycle ---
  void on_data_sent(const Packet& pkt);
  void on_delivery(const Packet& pkt, SimTime now);
  void on_drop_no_route(const Packet& pkt);
  void on_drop_ttl(const Packet& pkt);
  void on_drop_buffer(const Packet& pkt);

  // --- control accounting ---
  /// Called by the medium for every control transmission.
  void on_control_tx(NodeId node, const Packet& pkt, SimTime now);
  /// Called by protocols once per origination round.
  void on_control_origin(NodeId node, ControlCounter counter);

  std::uint64_t origin_count(NodeId node, ControlCounter counter) const {
    return origin_tx_.at(node)[static_cast<int>(counter)];
  }
  std::uint64_t total_origin_count(ControlCounter counter) const;

  void enable_tx_log() { tx_log_enabled_ = true; }
  const std::vector<TxLogEntry>& tx_log() const { return tx_log_; }

  const std::vector<double>& delay_samples() const { return delay_samples_; }

  std::uint64_t sent() const { return sent_; }
  std::uint64_t delivered() const { return delivered_; }

  /// Test hook for the conservation negative test.
  void corrupt_delivered_counter() { ++delivered_; }

  /// Aggregates the record and asserts packet conservation:
  /// delivered + drops + in_flight == sent. A violation is a fatal
  /// correctness failure (throws std::logic_error).
  MetricsRecord finalize(double duration) const;

 private:
  std::uint64_t sent_ = 0;
  std::uint64_t delivered_ = 0;
  std::uint64_t dropped_no_route_ = 0;
  std::uint64_t dropped_ttl_ = 0;
  std::uint64_t dropped_buffer_ = 0;
  std::uint64_t duplicates_ = 0;
  std::uint64_t outstanding_ = 0;  // sent but not yet terminal
  std::uint64_t delivered_bytes_ = 0;
  std::uint64_t ce_control_tx_ = 0;
  std::uint64_t ce_control_bytes_ = 0;
  std::vector<double> delay_samples_;
  std::set<std::pair<int, std::uint64_t>> seen_;  // (flow, payload_seq)
  std::vector<std::array<std::uint64_t, kControlCounterCount>> origin_tx_;
  bool tx_log_enabled_ = false;
  std::vector<TxLogEntry> tx_log_;
};

}  // namespace manetsim
