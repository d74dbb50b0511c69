#pragma once

#include <functional>

#include "manetsim/packet.hpp"
#include "manetsim/sim.hpp"

namespace manetsim {

/// One constant-bit-rate flow.
struct FlowConfig {
  NodeId src;
  NodeId dst;
  double rate;    // packets/second
  int pkt_size;   // bytes
  SimTime start;
  SimTime stop;

  void validate() const;
};

inline double offered_load_bps(const FlowConfig& f) {
  return f.rate * static_cast<double>(f.pkt_size) * 8.0;
}

/// Schedules one packet every 1/rate within [start, stop); the callback
/// receives the per-flow payload sequence number.
class CbrSource {
 public:
  using InjectFn = std::function<void(std::uint64_t payload_seq)>;

  CbrSource(Simulator& sim, FlowConfig cfg, InjectFn inject);

  /// Call once to begin the tick chain.
  void start();

  std::uint64_t injected() const { return next_seq_; }

 private:
  void tick();

  Simulator& sim_;
  FlowConfig cfg_;
  InjectFn inject_;
  std::uint64_t next_seq_ = 0;
};

}  // namespace manetsim
