#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <random>
#include <vector>

namespace manetsim {

/// Simulation time in seconds.
using SimTime = double;

/// Deterministic uniform source. Values are derived from the top 53 bits of
/// a mt19937_64 draw, so results do not depend on the standard library's
/// distribution internals and replay bit-identically across platforms.
///
/// Consumption order within a run: initial node placement, initial
/// waypoints, flow endpoint selection, then all runtime draws (waypoint
/// resampling and transmission jitter) in event dispatch order.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : gen_(seed) {}

  /// Uniform value in [lo, hi); lo == hi returns lo. lo > hi throws.
  double uniform(double lo, double hi);

  /// Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi);

 private:
  std::mt19937_64 gen_;
};

/// Discrete-event engine with a monotone clock. Events are dispatched in
/// (fire_at, seq) order; seq is a global counter so simultaneous events run
/// in scheduling order (FIFO among ties).
class Simulator {
 public:
  SimTime now() const { return now_; }

  /// Enqueue a callback at absolute time `at`. Scheduling in the past is a
  /// fatal programming error and throws std::logic_error.
  void schedule(SimTime at, std::function<void()> fn);

  /// Dispatch every event with fire_at <= t_end, then set the clock to
  /// t_end. Returns the number of events dispatched by this call.
  std::size_t run_until(SimTime t_end);

  std::size_t dispatched() const { return dispatched_; }

  /// (fire_at, seq) of every dispatched event, recorded when tracing is on.
  void set_trace(bool on) { trace_ = on; }
  const std::vector<std::pair<SimTime, std::uint64_t>>& trace() const {
    return trace_log_;
  }

 private:
  struct Item {
    SimTime at;
    std::uint64_t seq;
    std::function<void()> fn;
  };
  struct Later {
    bool operator()(const Item& a, const Item& b) const {
      if (a.at != b.at) return a.at > b.at;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Item, std::vector<Item>, Later> queue_;
  SimTime now_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::size_t dispatched_ = 0;
  bool trace_ = false;
  std::vector<std::pair<SimTime, std::uint64_t>> trace_log_;
};

}  // namespace manetsim
