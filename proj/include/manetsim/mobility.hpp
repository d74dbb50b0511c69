#pragma once

#include <cmath>
#include <vector>

#include "manetsim/sim.hpp"

namespace manetsim {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Kinematic state of one node between phase transitions.
struct MobilityState {
  enum class Phase { Paused, Moving };
  Position current;   // position at the start of the current phase
  Position waypoint;  // target of the current leg (Moving only)
  double speed = 0.0;  // m/s, fixed per scenario
  double pause = 0.0;  // s
  Phase phase = Phase::Paused;
};

/// Position t_elapsed seconds into the current phase: linear motion toward
/// the waypoint at fixed speed, clamped on arrival. Paused states do not
/// move.
Position position_at(const MobilityState& s, double t_elapsed);

/// Random Waypoint over a square field. Positions are sampled lazily from
/// closed-form kinematics; phase transitions (arrival, pause end) are
/// scheduled as engine events, so there is no fixed-tick integration error.
///
/// Nodes start paused for the scenario pause value, so pause == duration
/// yields an exactly static topology.
class RandomWaypoint {
 public:
  /// Draws n i.i.d. uniform initial positions. n == 0 is a config error.
  RandomWaypoint(int n, double side, double speed, double pause,
                 RandomSource& rng);

  /// Schedules the phase-transition events. Waypoints are drawn from `rng`
  /// as transitions dispatch; transitions past `duration` are not created.
  void attach(Simulator& sim, RandomSource& rng, SimTime duration);

  Position position(int node, SimTime now) const;
  int size() const { return static_cast<int>(states_.size()); }
  double field_side() const { return side_; }

  /// Test hook: pin a node at `p` from `now` on (pauses it indefinitely).
  void teleport(int node, Position p, SimTime now);

  /// Test hook: replace all initial positions (before attach()).
  void set_positions(const std::vector<Position>& pos);

 private:
  struct NodeState {
    MobilityState ms;
    SimTime phase_start = 0.0;
    std::uint64_t gen = 0;  // invalidates stale transition events
  };

  void schedule_transition(int node);
  void on_arrival(int node, std::uint64_t gen);
  void on_resume(int node, std::uint64_t gen);

  std::vector<NodeState> states_;
  double side_;
  double speed_;
  double pause_;
  Simulator* sim_ = nullptr;
  RandomSource* rng_ = nullptr;
  SimTime duration_ = 0.0;
};

}  // namespace manetsim
