#include "manetsim/sim.hpp"

#include <stdexcept>
#include <string>

namespace manetsim {

double RandomSource::uniform(double lo, double hi) {
  if (lo > hi) {
    throw std::logic_error("RandomSource::uniform: lo > hi");
  }
  if (lo == hi) return lo;
  double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int RandomSource::uniform_int(int lo, int hi) {
  if (lo > hi) {
    throw std::logic_error("RandomSource::uniform_int: lo > hi");
  }
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(gen_() % span);
}

void Simulator::schedule(SimTime at, std::function<void()> fn) {
  if (at < now_) {
    throw std::logic_error("Simulator::schedule: event at t=" +
                           std::to_string(at) + " is in the past (clock=" +
                           std::to_string(now_) + ")");
  }
  queue_.push(Item{at, next_seq_++, std::move(fn)});
}

std::size_t Simulator::run_until(SimTime t_end) {
  if (t_end < now_) {
    throw std::logic_error("Simulator::run_until: t_end before current clock");
  }
  std::size_t count = 0;
  while (!queue_.empty() && queue_.top().at <= t_end) {
    Item item = std::move(const_cast<Item&>(queue_.top()));
    queue_.pop();
    now_ = item.at;
    if (trace_) trace_log_.emplace_back(item.at, item.seq);
    ++dispatched_;
    ++count;
    item.fn();
  }
  now_ = t_end;
  return count;
}

}  // namespace manetsim
