#include "manetsim/analytic.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace manetsim::analytic {

namespace {

double triangular(double k) { return k * (k + 1.0) / 2.0; }

double mean_scope(const std::vector<int>& sizes) {
  if (sizes.empty()) return 0.0;
  double sum = std::accumulate(sizes.begin(), sizes.end(), 0.0);
  return std::round(sum / static_cast<double>(sizes.size()));
}

}  // namespace

void AnalyticInputs::validate() const {
  if (!(tau_ns < tau_nl)) {
    throw std::invalid_argument("analytic: tau_ns must be < tau_nl");
  }
  if (tau_ru_per <= 0.0 || tau_ias <= 0.0 || tau_ies <= 0.0 ||
      tau_hello <= 0.0) {
    throw std::invalid_argument("analytic: intervals must be positive");
  }
  if (n < 0 || n_mprs < 0) {
    throw std::invalid_argument("analytic: counts must be non-negative");
  }
  for (int v : n_ias) {
    if (v < 0) throw std::invalid_argument("analytic: negative scope size");
  }
  for (int v : n_ies) {
    if (v < 0) throw std::invalid_argument("analytic: negative scope size");
  }
  for (int v : nb) {
    if (v < 0) throw std::invalid_argument("analytic: negative neighbor count");
  }
}

CeBreakdown ce_dsdv(const AnalyticInputs& in) {
  in.validate();
  CeBreakdown out;
  double unit = triangular(in.n);
  out.periodic = (in.tau_nl / in.tau_ru_per) * unit;
  out.triggered = static_cast<double>(in.trigger_events) * unit;
  out.total = out.periodic + out.triggered;
  return out;
}

CeBreakdown ce_fsr(const AnalyticInputs& in, FsrScopeReading reading) {
  in.validate();
  if (static_cast<int>(in.n_ias.size()) != in.n ||
      static_cast<int>(in.n_ies.size()) != in.n) {
    throw std::invalid_argument(
        "analytic: scope-size lists must have one entry per node");
  }
  CeBreakdown out;
  if (reading == FsrScopeReading::PerNode) {
    double ias = 0.0, ies = 0.0;
    for (int i = 0; i < in.n; ++i) {
      ias += triangular(in.n_ias[i]);
      ies += triangular(in.n_ies[i]);
    }
    out.periodic = (in.tau_nl / in.tau_ias) * ias;
    out.triggered = (in.tau_nl / in.tau_ies) * ies;
  } else {
    out.periodic =
        (in.tau_nl / in.tau_ias) * in.n * triangular(mean_scope(in.n_ias));
    out.triggered =
        (in.tau_nl / in.tau_ies) * in.n * triangular(mean_scope(in.n_ies));
  }
  out.total = out.periodic + out.triggered;
  return out;
}

CeBreakdown ce_olsr(const AnalyticInputs& in) {
  in.validate();
  if (static_cast<int>(in.nb.size()) != in.n) {
    throw std::invalid_argument(
        "analytic: neighbor-count list must have one entry per node");
  }
  CeBreakdown out;
  double nb_sum = std::accumulate(in.nb.begin(), in.nb.end(), 0.0);
  out.periodic = (in.tau_nl / in.tau_hello) * nb_sum;
  out.triggered =
      static_cast<double>(in.stable_rounds) * triangular(in.n_mprs) +
      static_cast<double>(in.unstable_events) * triangular(in.n);
  out.total = out.periodic + out.triggered;
  return out;
}

ReconcileReport reconcile(
    const AnalyticInputs& in, double analytic_ce_total,
    std::uint64_t simulated_ce_tx,
    const std::vector<std::pair<std::string, std::pair<double,
        std::vector<std::uint64_t>>>>& per_node_rounds) {
  in.validate();
  ReconcileReport report;
  for (const auto& [name, data] : per_node_rounds) {
    const auto& [analytic_rounds, per_node] = data;
    ReconcileReport::RoundCheck check;
    check.name = name;
    check.analytic_rounds = analytic_rounds;
    double sum = 0.0;
    bool ok = true;
    for (std::uint64_t c : per_node) {
      sum += static_cast<double>(c);
      if (std::abs(static_cast<double>(c) - analytic_rounds) > 1.0) ok = false;
    }
    check.simulated_mean =
        per_node.empty() ? 0.0 : sum / static_cast<double>(per_node.size());
    check.within_one = ok && !per_node.empty();
    report.rounds.push_back(std::move(check));
  }
  report.analytic_ce_total = analytic_ce_total;
  report.simulated_ce_tx = simulated_ce_tx;
  report.ratio = simulated_ce_tx == 0
                     ? 0.0
                     : analytic_ce_total / static_cast<double>(simulated_ce_tx);
  return report;
}

}  // namespace manetsim::analytic
