#include <doctest.h>

#include <stdexcept>

#include "manetsim/mobility.hpp"
#include "support.hpp"

using namespace manetsim;

TEST_CASE("linear motion toward the waypoint") {
  MobilityState s;
  s.current = {0.0, 0.0};
  s.waypoint = {100.0, 0.0};
  s.speed = 10.0;
  s.phase = MobilityState::Phase::Moving;
  Position p = position_at(s, 5.0);
  CHECK(p.x == doctest::Approx(50.0));
  CHECK(p.y == doctest::Approx(0.0));
}

TEST_CASE("arrival clamps at the waypoint") {
  // 3-4-5 triangle: leg length 50 covered exactly at speed 5 over 10 s.
  MobilityState s;
  s.current = {0.0, 0.0};
  s.waypoint = {30.0, 40.0};
  s.speed = 5.0;
  s.phase = MobilityState::Phase::Moving;
  Position p = position_at(s, 10.0);
  CHECK(p.x == doctest::Approx(30.0));
  CHECK(p.y == doctest::Approx(40.0));
  Position q = position_at(s, 20.0);
  CHECK(q.x == doctest::Approx(30.0));
  CHECK(q.y == doctest::Approx(40.0));
}

TEST_CASE("paused state never moves") {
  MobilityState s;
  s.current = {12.0, 34.0};
  s.waypoint = {99.0, 99.0};
  s.speed = 10.0;
  s.phase = MobilityState::Phase::Paused;
  Position p = position_at(s, 1000.0);
  CHECK(p.x == 12.0);
  CHECK(p.y == 34.0);
}

TEST_CASE("zero nodes is a config error") {
  RandomSource rng(1);
  CHECK_THROWS_AS(RandomWaypoint(0, 1000.0, 30.0, 0.0, rng),
                  std::invalid_argument);
}

TEST_CASE("degenerate field pins the single node at the origin") {
  RandomSource rng(1);
  RandomWaypoint rw(1, 0.0, 30.0, 0.0, rng);
  Position p = rw.position(0, 0.0);
  CHECK(p.x == 0.0);
  CHECK(p.y == 0.0);
}

TEST_CASE("initial placement stays inside the field and replays per seed") {
  RandomSource a(77), b(77);
  RandomWaypoint ra(50, 1000.0, 30.0, 0.0, a);
  RandomWaypoint rb(50, 1000.0, 30.0, 0.0, b);
  for (int i = 0; i < 50; ++i) {
    Position p = ra.position(i, 0.0);
    CHECK(p.x >= 0.0);
    CHECK(p.x <= 1000.0);
    CHECK(p.y >= 0.0);
    CHECK(p.y <= 1000.0);
    Position q = rb.position(i, 0.0);
    CHECK(p.x == q.x);
    CHECK(p.y == q.y);
  }
}

TEST_CASE("pause equal to the duration keeps every node static") {
  Simulator sim;
  RandomSource rng(3);
  RandomWaypoint rw(10, 1000.0, 30.0, 900.0, rng);
  std::vector<Position> start;
  for (int i = 0; i < 10; ++i) start.push_back(rw.position(i, 0.0));
  rw.attach(sim, rng, 900.0);
  sim.run_until(900.0);
  for (int i = 0; i < 10; ++i) {
    Position p = rw.position(i, 900.0);
    CHECK(p.x == start[i].x);
    CHECK(p.y == start[i].y);
  }
}

TEST_CASE("mobile nodes respect field bounds and the speed limit") {
  Simulator sim;
  RandomSource rng(5);
  const double speed = 30.0;
  RandomWaypoint rw(5, 1000.0, speed, 1.0, rng);
  rw.attach(sim, rng, 300.0);
  std::vector<Position> prev;
  for (int i = 0; i < 5; ++i) prev.push_back(rw.position(i, 0.0));
  for (double t = 1.0; t <= 300.0; t += 1.0) {
    sim.run_until(t);
    for (int i = 0; i < 5; ++i) {
      Position p = rw.position(i, t);
      CHECK(p.x >= 0.0);
      CHECK(p.x <= 1000.0);
      CHECK(p.y >= 0.0);
      CHECK(p.y <= 1000.0);
      CHECK(distance(prev[i], p) <= speed * 1.0 + 1e-9);
      prev[i] = p;
    }
  }
}

TEST_CASE("teleport pins a node from now on") {
  Simulator sim;
  RandomSource rng(5);
  RandomWaypoint rw(3, 1000.0, 30.0, 0.5, rng);
  rw.attach(sim, rng, 100.0);
  sim.run_until(10.0);
  rw.teleport(1, Position{1.0, 2.0}, 10.0);
  sim.run_until(100.0);
  Position p = rw.position(1, 100.0);
  CHECK(p.x == 1.0);
  CHECK(p.y == 2.0);
}

TEST_CASE("set_positions rejects a size mismatch") {
  RandomSource rng(1);
  RandomWaypoint rw(3, 1000.0, 30.0, 0.0, rng);
  CHECK_THROWS_AS(rw.set_positions({Position{0, 0}}), std::invalid_argument);
}
