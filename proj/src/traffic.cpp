#include "manetsim/traffic.hpp"

#include <stdexcept>

namespace manetsim {

void FlowConfig::validate() const {
  if (src == dst) throw std::invalid_argument("flow: src == dst");
  if (rate <= 0.0) throw std::invalid_argument("flow: rate must be positive");
  if (pkt_size <= 0) throw std::invalid_argument("flow: pkt_size must be positive");
  if (!(start < stop)) throw std::invalid_argument("flow: start must be < stop");
}

CbrSource::CbrSource(Simulator& sim, FlowConfig cfg, InjectFn inject)
    : sim_(sim), cfg_(cfg), inject_(std::move(inject)) {
  cfg_.validate();
}

void CbrSource::start() {
  sim_.schedule(cfg_.start, [this] { tick(); });
}

void CbrSource::tick() {
  if (sim_.now() >= cfg_.stop) return;
  inject_(next_seq_++);
  sim_.schedule(sim_.now() + 1.0 / cfg_.rate, [this] { tick(); });
}

}  // namespace manetsim
