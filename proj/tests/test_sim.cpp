#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "manetsim/sim.hpp"

using namespace manetsim;

TEST_CASE("events dispatch in time order regardless of insertion order") {
  Simulator sim;
  std::vector<int> order;
  sim.schedule(5.0, [&] { order.push_back(5); });
  sim.schedule(3.0, [&] { order.push_back(3); });
  sim.run_until(10.0);
  CHECK(order == std::vector<int>{3, 5});
}

TEST_CASE("simultaneous events run FIFO") {
  Simulator sim;
  std::vector<char> order;
  sim.schedule(7.0, [&] { order.push_back('A'); });
  sim.schedule(7.0, [&] { order.push_back('B'); });
  sim.run_until(7.0);
  CHECK(order == std::vector<char>{'A', 'B'});
}

TEST_CASE("scheduling in the past throws") {
  Simulator sim;
  sim.run_until(4.0);
  CHECK(sim.now() == 4.0);
  CHECK_THROWS_AS(sim.schedule(2.0, [] {}), std::logic_error);
}

TEST_CASE("run_until dispatches only events at or before t_end") {
  Simulator sim;
  int fired = 0;
  for (double t : {1.0, 2.0, 3.0}) {
    sim.schedule(t, [&] { ++fired; });
  }
  std::size_t n = sim.run_until(2.5);
  CHECK(n == 2);
  CHECK(fired == 2);
  CHECK(sim.now() == 2.5);
}

TEST_CASE("run_until with empty queue just advances the clock") {
  Simulator sim;
  CHECK(sim.run_until(900.0) == 0);
  CHECK(sim.now() == 900.0);
}

TEST_CASE("self-rescheduling 15 s timer fires 60 times in 900 s") {
  Simulator sim;
  int fires = 0;
  std::function<void()> tick = [&] {
    ++fires;
    sim.schedule(sim.now() + 15.0, tick);
  };
  sim.schedule(15.0, tick);
  CHECK(sim.run_until(900.0) == 60);
  CHECK(fires == 60);
}

TEST_CASE("clock is monotone across dispatched events") {
  Simulator sim;
  sim.set_trace(true);
  RandomSource rng(7);
  int spawned = 0;
  std::function<void()> chaos = [&] {
    if (sim.now() >= 50.0) return;
    sim.schedule(sim.now() + rng.uniform(0.0, 3.0), chaos);
    ++spawned;
    if (spawned < 200) {  // branch early, then settle into a single chain
      sim.schedule(sim.now() + rng.uniform(0.0, 3.0), chaos);
    }
  };
  sim.schedule(0.0, chaos);
  sim.run_until(60.0);
  const auto& trace = sim.trace();
  REQUIRE(trace.size() > 10);
  for (std::size_t i = 1; i < trace.size(); ++i) {
    CHECK(trace[i - 1].first <= trace[i].first);
  }
}

TEST_CASE("uniform degenerate range returns lo") {
  RandomSource rng(1);
  CHECK(rng.uniform(5.0, 5.0) == 5.0);
}

TEST_CASE("uniform is deterministic per seed") {
  RandomSource a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.uniform(0.0, 1.0) == b.uniform(0.0, 1.0));
  }
}

TEST_CASE("uniform rejects inverted bounds") {
  RandomSource rng(1);
  CHECK_THROWS_AS(rng.uniform(2.0, 1.0), std::logic_error);
}

TEST_CASE("uniform sample mean is plausible") {
  RandomSource rng(1234);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double v = rng.uniform(0.0, 1.0);
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    sum += v;
  }
  double mean = sum / 10000.0;
  CHECK(mean >= 0.45);
  CHECK(mean <= 0.55);
}

TEST_CASE("uniform_int covers the inclusive range") {
  RandomSource rng(9);
  bool lo_seen = false, hi_seen = false;
  for (int i = 0; i < 1000; ++i) {
    int v = rng.uniform_int(0, 3);
    CHECK(v >= 0);
    CHECK(v <= 3);
    if (v == 0) lo_seen = true;
    if (v == 3) hi_seen = true;
  }
  CHECK(lo_seen);
  CHECK(hi_seen);
}
