#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "manetsim/mobility.hpp"

namespace manetsim {

enum class ProtocolKind { Dsdv, Fsr, Olsr, OlsrM };

std::string to_string(ProtocolKind kind);
std::optional<ProtocolKind> protocol_from_string(const std::string& name);

struct DsdvConfig {
  double ru_per_interval = 15.0;
  double settling_time = 6.0;
  bool buffer_during_settling = true;
  int buffer_capacity = 8;  // held packets per destination
};

struct FsrConfig {
  int intra_ttl = 2;
  double intra_interval = 5.0;
  int inter_ttl = 255;
  double inter_interval = 15.0;
};

struct OlsrConfig {
  double hello_interval = 2.0;
  double tc_interval = 5.0;
  double neighbor_hold = 6.0;  // 3 x hello_interval
};

/// Table-1 defaults for the shortened variant: half the standard intervals.
inline OlsrConfig olsr_m_defaults() {
  return OlsrConfig{1.0, 2.5, 3.0};
}

/// Complete declarative description of one experiment.
struct ScenarioConfig {
  ProtocolKind protocol = ProtocolKind::Dsdv;
  int n = 10;
  double field_side = 1000.0;
  double range = 250.0;
  double bandwidth = 2e6;
  double speed = 30.0;
  double pause = 0.0;
  double duration = 900.0;
  int flows = 10;
  double flow_rate = 4.0;  // packets/s
  int pkt_size = 512;      // bytes
  std::uint64_t seed = 1;
  double jitter_max = 0.001;
  double lsm_interval = 0.5;
  double flow_start = 0.0;
  std::optional<double> flow_stop;  // defaults to duration

  DsdvConfig dsdv;
  FsrConfig fsr;
  OlsrConfig olsr;
  OlsrConfig olsr_m = olsr_m_defaults();

  // Programmatic overrides (tests / bindings), not part of the file format.
  std::optional<std::vector<Position>> fixed_positions;
  std::optional<std::vector<std::pair<int, int>>> fixed_flows;

  const OlsrConfig& active_olsr() const {
    return protocol == ProtocolKind::OlsrM ? olsr_m : olsr;
  }

  /// Throws ConfigError on any invariant violation.
  void validate() const;
};

struct ConfigError {
  int line;  // 0 when not tied to a file location
  std::string message;
};

/// Parses the flat key=value format with one [section] per protocol
/// override block. Unknown keys and invariant violations raise ConfigError
/// with the offending line number.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

}  // namespace manetsim
