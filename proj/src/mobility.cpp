#include "manetsim/mobility.hpp"

#include <stdexcept>

namespace manetsim {

Position position_at(const MobilityState& s, double t_elapsed) {
  if (s.phase == MobilityState::Phase::Paused) return s.current;
  double leg = distance(s.current, s.waypoint);
  double travelled = s.speed * t_elapsed;
  if (leg <= 0.0 || travelled >= leg) return s.waypoint;
  double f = travelled / leg;
  return Position{s.current.x + f * (s.waypoint.x - s.current.x),
                  s.current.y + f * (s.waypoint.y - s.current.y)};
}

RandomWaypoint::RandomWaypoint(int n, double side, double speed, double pause,
                               RandomSource& rng)
    : side_(side), speed_(speed), pause_(pause) {
  if (n < 1) throw std::invalid_argument("RandomWaypoint: node count must be >= 1");
  if (side < 0.0) throw std::invalid_argument("RandomWaypoint: negative field side");
  states_.resize(n);
  for (auto& st : states_) {
    st.ms.current = Position{rng.uniform(0.0, side), rng.uniform(0.0, side)};
    st.ms.waypoint = st.ms.current;
    st.ms.speed = speed;
    st.ms.pause = pause;
    st.ms.phase = MobilityState::Phase::Paused;
  }
}

void RandomWaypoint::set_positions(const std::vector<Position>& pos) {
  if (static_cast<int>(pos.size()) != size()) {
    throw std::invalid_argument("RandomWaypoint::set_positions: size mismatch");
  }
  for (std::size_t i = 0; i < pos.size(); ++i) {
    states_[i].ms.current = pos[i];
    states_[i].ms.waypoint = pos[i];
  }
}

void RandomWaypoint::attach(Simulator& sim, RandomSource& rng,
                            SimTime duration) {
  sim_ = &sim;
  rng_ = &rng;
  duration_ = duration;
  for (int i = 0; i < size(); ++i) {
    states_[i].phase_start = sim.now();
    schedule_transition(i);
  }
}

Position RandomWaypoint::position(int node, SimTime now) const {
  const NodeState& st = states_.at(node);
  return position_at(st.ms, now - st.phase_start);
}

void RandomWaypoint::teleport(int node, Position p, SimTime now) {
  NodeState& st = states_.at(node);
  ++st.gen;  // cancel pending transitions
  st.ms.current = p;
  st.ms.waypoint = p;
  st.ms.phase = MobilityState::Phase::Paused;
  st.phase_start = now;
}

void RandomWaypoint::schedule_transition(int node) {
  NodeState& st = states_[node];
  std::uint64_t gen = st.gen;
  if (st.ms.phase == MobilityState::Phase::Paused) {
    SimTime at = st.phase_start + st.ms.pause;
    if (at > duration_) return;
    sim_->schedule(at, [this, node, gen] { on_resume(node, gen); });
  } else {
    double leg = distance(st.ms.current, st.ms.waypoint);
    SimTime at = st.phase_start + (st.ms.speed > 0.0 ? leg / st.ms.speed : 0.0);
    if (at > duration_) return;
    sim_->schedule(at, [this, node, gen] { on_arrival(node, gen); });
  }
}

void RandomWaypoint::on_resume(int node, std::uint64_t gen) {
  NodeState& st = states_[node];
  if (gen != st.gen) return;
  st.ms.current = position(node, sim_->now());
  st.ms.waypoint = Position{rng_->uniform(0.0, side_), rng_->uniform(0.0, side_)};
  st.ms.phase = MobilityState::Phase::Moving;
  st.phase_start = sim_->now();
  schedule_transition(node);
}

void RandomWaypoint::on_arrival(int node, std::uint64_t gen) {
  NodeState& st = states_[node];
  if (gen != st.gen) return;
  st.ms.current = st.ms.waypoint;
  st.ms.phase = MobilityState::Phase::Paused;
  st.phase_start = sim_->now();
  schedule_transition(node);
}

}  // namespace manetsim
