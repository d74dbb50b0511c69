#include "manetsim/config.hpp"

#include <fstream>
#include <sstream>

namespace manetsim {

std::string to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::Dsdv: return "dsdv";
    case ProtocolKind::Fsr: return "fsr";
    case ProtocolKind::Olsr: return "olsr";
    case ProtocolKind::OlsrM: return "olsr_m";
  }
  return "?";
}

std::optional<ProtocolKind> protocol_from_string(const std::string& name) {
  if (name == "dsdv") return ProtocolKind::Dsdv;
  if (name == "fsr") return ProtocolKind::Fsr;
  if (name == "olsr") return ProtocolKind::Olsr;
  if (name == "olsr_m" || name == "olsr-m") return ProtocolKind::OlsrM;
  return std::nullopt;
}

namespace {

void require(bool ok, const std::string& msg, int line = 0) {
  if (!ok) throw ConfigError{line, msg};
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

double parse_num(const std::string& v, int line) {
  try {
    std::size_t used = 0;
    double out = std::stod(v, &used);
    require(used == v.size(), "malformed number '" + v + "'", line);
    return out;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    throw ConfigError{line, "malformed number '" + v + "'"};
  }
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError{line, "malformed bool '" + v + "'"};
}

}  // namespace

void ScenarioConfig::validate() const {
  require(n >= 1, "n must be >= 1");
  require(field_side >= 0.0, "field_side must be non-negative");
  require(range > 0.0, "range must be positive");
  require(bandwidth > 0.0, "bandwidth must be positive");
  require(speed > 0.0, "speed must be positive");
  require(pause >= 0.0, "pause must be non-negative");
  require(duration > 0.0, "duration must be positive");
  require(pause <= duration, "pause must not exceed duration");
  require(flows >= 0, "flows must be non-negative");
  require(flow_rate > 0.0, "flow_rate must be positive");
  require(pkt_size > 0, "pkt_size must be positive");
  require(jitter_max >= 0.0, "jitter_max must be non-negative");
  require(lsm_interval > 0.0, "lsm_interval must be positive");
  require(flow_start >= 0.0, "flow_start must be non-negative");
  double stop = flow_stop.value_or(duration);
  require(flow_start < stop && stop <= duration,
          "flow window must satisfy start < stop <= duration");
  require(flows == 0 || n >= 2, "flows require at least two nodes");
  require(dsdv.ru_per_interval > 0.0, "dsdv.ru_per_interval must be positive");
  require(dsdv.settling_time >= 0.0, "dsdv.settling_time must be non-negative");
  require(dsdv.buffer_capacity >= 0, "dsdv.buffer_capacity must be non-negative");
  require(fsr.intra_ttl < fsr.inter_ttl, "fsr.intra_ttl must be < inter_ttl");
  require(fsr.intra_interval < fsr.inter_interval,
          "fsr.intra_interval must be < inter_interval");
  require(fsr.intra_interval > 0.0 && fsr.intra_ttl > 0,
          "fsr intervals and ttls must be positive");
  for (const OlsrConfig* oc : {&olsr, &olsr_m}) {
    require(oc->hello_interval > 0.0 && oc->tc_interval > 0.0,
            "olsr intervals must be positive");
    require(oc->hello_interval < oc->neighbor_hold,
            "olsr hello_interval must be < neighbor_hold");
  }
  require(olsr_m.hello_interval < olsr.hello_interval &&
              olsr_m.tc_interval < olsr.tc_interval,
          "olsr_m intervals must be strictly smaller than olsr's");
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::string section;
  bool olsr_m_hold_set = false;
  bool olsr_hold_set = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    auto hash = line.find('#');
    if (hash != std::string::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      require(line.back() == ']', "malformed section header", line_no);
      section = trim(line.substr(1, line.size() - 2));
      require(section == "dsdv" || section == "fsr" || section == "olsr" ||
                  section == "olsr_m",
              "unknown section '" + section + "'", line_no);
      continue;
    }
    auto eq = line.find('=');
    require(eq != std::string::npos, "expected key = value", line_no);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    require(!key.empty() && !value.empty(), "expected key = value", line_no);

    if (section.empty()) {
      if (key == "protocol") {
        auto p = protocol_from_string(value);
        require(p.has_value(), "unknown protocol '" + value + "'", line_no);
        cfg.protocol = *p;
      } else if (key == "n") {
        cfg.n = static_cast<int>(parse_num(value, line_no));
      } else if (key == "field_side") {
        cfg.field_side = parse_num(value, line_no);
      } else if (key == "range") {
        cfg.range = parse_num(value, line_no);
      } else if (key == "bandwidth") {
        cfg.bandwidth = parse_num(value, line_no);
      } else if (key == "speed") {
        cfg.speed = parse_num(value, line_no);
      } else if (key == "pause") {
        cfg.pause = parse_num(value, line_no);
      } else if (key == "duration") {
        cfg.duration = parse_num(value, line_no);
      } else if (key == "flows") {
        cfg.flows = static_cast<int>(parse_num(value, line_no));
      } else if (key == "flow_rate") {
        cfg.flow_rate = parse_num(value, line_no);
      } else if (key == "pkt_size") {
        cfg.pkt_size = static_cast<int>(parse_num(value, line_no));
      } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_num(value, line_no));
      } else if (key == "jitter_max") {
        cfg.jitter_max = parse_num(value, line_no);
      } else if (key == "lsm_interval") {
        cfg.lsm_interval = parse_num(value, line_no);
      } else if (key == "flow_start") {
        cfg.flow_start = parse_num(value, line_no);
      } else if (key == "flow_stop") {
        cfg.flow_stop = parse_num(value, line_no);
      } else {
        throw ConfigError{line_no, "unknown key '" + key + "'"};
      }
    } else if (section == "dsdv") {
      if (key == "ru_per_interval") {
        cfg.dsdv.ru_per_interval = parse_num(value, line_no);
      } else if (key == "settling_time") {
        cfg.dsdv.settling_time = parse_num(value, line_no);
      } else if (key == "buffer_during_settling") {
        cfg.dsdv.buffer_during_settling = parse_bool(value, line_no);
      } else if (key == "buffer_capacity") {
        cfg.dsdv.buffer_capacity = static_cast<int>(parse_num(value, line_no));
      } else {
        throw ConfigError{line_no, "unknown key '" + key + "' in [dsdv]"};
      }
    } else if (section == "fsr") {
      if (key == "intra_ttl") {
        cfg.fsr.intra_ttl = static_cast<int>(parse_num(value, line_no));
      } else if (key == "intra_interval") {
        cfg.fsr.intra_interval = parse_num(value, line_no);
      } else if (key == "inter_ttl") {
        cfg.fsr.inter_ttl = static_cast<int>(parse_num(value, line_no));
      } else if (key == "inter_interval") {
        cfg.fsr.inter_interval = parse_num(value, line_no);
      } else {
        throw ConfigError{line_no, "unknown key '" + key + "' in [fsr]"};
      }
    } else {
      OlsrConfig& oc = section == "olsr" ? cfg.olsr : cfg.olsr_m;
      bool& hold_set = section == "olsr" ? olsr_hold_set : olsr_m_hold_set;
      if (key == "hello_interval") {
        oc.hello_interval = parse_num(value, line_no);
        if (!hold_set) oc.neighbor_hold = 3.0 * oc.hello_interval;
      } else if (key == "tc_interval") {
        oc.tc_interval = parse_num(value, line_no);
      } else if (key == "neighbor_hold") {
        oc.neighbor_hold = parse_num(value, line_no);
        hold_set = true;
      } else {
        throw ConfigError{line_no, "unknown key '" + key + "' in [" + section + "]"};
      }
    }
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError{0, "cannot open config file '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace manetsim
