#include "manetsim/metrics.hpp"

#include <numeric>
#include <stdexcept>

namespace manetsim {

void MetricsCollector::on_data_sent(const Packet&) {
  ++sent_;
  ++outstanding_;
}

void MetricsCollector::on_delivery(const Packet& pkt, SimTime now) {
  auto key = std::make_pair(pkt.flow, pkt.payload_seq);
  if (!seen_.insert(key).second) {
    ++duplicates_;  // counted once; duplicate logged, not terminal again
    return;
  }
  ++delivered_;
  --outstanding_;
  delivered_bytes_ += static_cast<std::uint64_t>(pkt.size);
  delay_samples_.push_back(now - pkt.created_at);
}

void MetricsCollector::on_drop_no_route(const Packet&) {
  ++dropped_no_route_;
  --outstanding_;
}

void MetricsCollector::on_drop_ttl(const Packet&) {
  ++dropped_ttl_;
  --outstanding_;
}

void MetricsCollector::on_drop_buffer(const Packet&) {
  ++dropped_buffer_;
  --outstanding_;
}

void MetricsCollector::on_control_tx(NodeId node, const Packet& pkt,
                                     SimTime now) {
  ++ce_control_tx_;
  ce_control_bytes_ += static_cast<std::uint64_t>(pkt.size);
  if (tx_log_enabled_) {
    tx_log_.push_back(TxLogEntry{now, node, pkt.origin, pkt.variant,
                                 node != pkt.origin});
  }
}

void MetricsCollector::on_control_origin(NodeId node, ControlCounter counter) {
  ++origin_tx_.at(node)[static_cast<int>(counter)];
}

std::uint64_t MetricsCollector::total_origin_count(
    ControlCounter counter) const {
  std::uint64_t total = 0;
  for (const auto& per_node : origin_tx_) {
    total += per_node[static_cast<int>(counter)];
  }
  return total;
}

MetricsRecord MetricsCollector::finalize(double duration) const {
  std::uint64_t accounted = delivered_ + dropped_no_route_ + dropped_ttl_ +
                            dropped_buffer_ + outstanding_;
  if (accounted != sent_) {
    throw std::logic_error(
        "MetricsCollector::finalize: packet conservation violated (sent=" +
        std::to_string(sent_) + ", accounted=" + std::to_string(accounted) +
        ")");
  }
  MetricsRecord rec;
  rec.sent = sent_;
  rec.delivered = delivered_;
  rec.dropped_no_route = dropped_no_route_;
  rec.dropped_ttl = dropped_ttl_;
  rec.dropped_buffer = dropped_buffer_;
  rec.in_flight_at_end = outstanding_;
  rec.duplicates = duplicates_;
  rec.ce_control_tx = ce_control_tx_;
  rec.ce_control_bytes = ce_control_bytes_;
  rec.ct_samples = delay_samples_.size();
  if (!delay_samples_.empty()) {
    double sum = std::accumulate(delay_samples_.begin(), delay_samples_.end(),
                                 0.0);
    rec.ct_mean = sum / static_cast<double>(delay_samples_.size());
  }
  if (duration > 0.0) {
    rec.throughput_bps =
        static_cast<double>(delivered_bytes_) * 8.0 / duration;
  }
  return rec;
}

}  // namespace manetsim
