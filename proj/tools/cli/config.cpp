#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace cotc::cli {

namespace {

const std::vector<std::pair<std::string, std::string>> kKeys = {
    {"scheme", "V_COTC | C_COTC | V_COTC_CURRENT_RAMP"},
    {"vs", "source voltage, V"},
    {"vc", "control voltage, V (default: solved so that T is a steady-state period)"},
    {"vo", "output voltage held fixed in duty sweeps, V (optional)"},
    {"R", "load resistance, ohm"},
    {"L", "inductance, H"},
    {"C", "capacitance, F"},
    {"Rc", "capacitor ESR, ohm (default 0)"},
    {"Ri", "current-sense resistance, ohm (required for C_COTC and V_COTC_CURRENT_RAMP)"},
    {"d", "constant on-time, s"},
    {"T", "switching period, s (exactly one of T and D)"},
    {"D", "duty cycle, dimensionless (exactly one of T and D)"},
    {"ma", "ramp slope, V/s (default 0)"},
    {"D_range", "duty sweep lo:hi:n, dimensionless (default 0.2:1:200)"},
    {"lambda_range", "pole sweep lo:hi:n, dimensionless (default -2:0.9:200)"},
    {"ma_range", "ramp sweep lo:hi:n, V/s (default 0:2000:20)"},
    {"Nh", "harmonic truncation, count (default 2000)"},
    {"ncycles", "simulated cycles, count (default 1000)"},
    {"settle", "cycles skipped before orbit classification, count (default 500)"},
    {"kick", "relative initial perturbation for simulate, dimensionless (default 1e-4)"},
};

std::string unit_of(const std::string& key) {
  for (const auto& [k, v] : kKeys)
    if (k == key) return v;
  return "";
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v))
    throw ConfigError("config key '" + key + "': expected a number (" + unit_of(key) + "), got '" +
                      text + "'");
  return v;
}

long parse_count(const std::string& key, const std::string& text) {
  const double v = parse_number(key, text);
  if (v < 0.0 || v != std::floor(v))
    throw ConfigError("config key '" + key + "': expected a non-negative integer, got '" + text + "'");
  return static_cast<long>(v);
}

void require_positive(const std::string& key, double v) {
  if (!(v > 0.0))
    throw ConfigError("config key '" + key + "' must be positive (" + unit_of(key) + ")");
}

void require_non_negative(const std::string& key, double v) {
  if (!(v >= 0.0))
    throw ConfigError("config key '" + key + "' must be non-negative (" + unit_of(key) + ")");
}

}  // namespace

std::vector<double> Range::samples() const {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

Range parse_range(const std::string& key, const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
  if (b == std::string::npos)
    throw ConfigError("config key '" + key + "': expected lo:hi:n, got '" + text + "'");
  Range r;
  r.lo = parse_number(key, trim(text.substr(0, a)));
  r.hi = parse_number(key, trim(text.substr(a + 1, b - a - 1)));
  r.n = static_cast<std::size_t>(parse_count(key, trim(text.substr(b + 1))));
  if (r.hi < r.lo) throw ConfigError("config key '" + key + "': hi must not be below lo");
  return r;
}

BuckParams ConverterConfig::params_at(double duty) const {
  BuckParams p = params;
  p.vs = vs_at(duty);
  return p;
}

const std::vector<std::pair<std::string, std::string>>& config_keys() { return kKeys; }

std::map<std::string, std::string> read_entries(std::istream& in, const std::string& origin) {
  std::map<std::string, std::string> out;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key or value");
    out[key] = value;
  }
  return out;
}

ConverterConfig build_config(const std::map<std::string, std::string>& entries) {
  for (const auto& [key, value] : entries) {
    if (unit_of(key).empty()) throw ConfigError("unknown config key '" + key + "'");
  }
  const auto get = [&](const std::string& key) -> std::optional<std::string> {
    if (auto it = entries.find(key); it != entries.end()) return it->second;
    return std::nullopt;
  };
  const auto number = [&](const std::string& key) -> std::optional<double> {
    if (auto v = get(key)) return parse_number(key, *v);
    return std::nullopt;
  };
  const auto required = [&](const std::string& key) {
    auto v = number(key);
    if (!v) throw ConfigError("missing required config key '" + key + "' (" + unit_of(key) + ")");
    return *v;
  };

  ConverterConfig c;
  if (auto s = get("scheme")) {
    try {
      c.scheme = parse_scheme(*s);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("config key 'scheme': ") + e.what());
    }
  }
  c.params.R = required("R");
  c.params.L = required("L");
  c.params.C = required("C");
  c.params.Rc = number("Rc").value_or(0.0);
  if (uses_sense_resistor(c.scheme)) {
    if (!get("Ri"))
      throw ConfigError("missing required config key 'Ri' (" + unit_of("Ri") + ") for scheme " +
                        std::string(to_string(c.scheme)));
  }
  c.params.Ri = number("Ri").value_or(0.0);
  c.vo = number("vo");
  c.vc = number("vc");
  c.d = required("d");
  c.T = number("T");
  c.D = number("D");
  if (c.T.has_value() == c.D.has_value())
    throw ConfigError("exactly one of 'T' (switching period, s) and 'D' (duty, dimensionless) is required");
  if (auto vs = number("vs")) {
    c.params.vs = *vs;
  } else if (c.vo) {
    c.params.vs = *c.vo / (c.T ? c.d / *c.T : *c.D);
  } else {
    throw ConfigError("missing required config key 'vs' (" + unit_of("vs") + ")");
  }
  c.params.vc = c.vc.value_or(0.0);
  c.ma = number("ma").value_or(0.0);
  if (auto r = get("D_range")) c.D_range = parse_range("D_range", *r);
  if (auto r = get("lambda_range")) c.lambda_range = parse_range("lambda_range", *r);
  if (auto r = get("ma_range")) c.ma_range = parse_range("ma_range", *r);
  if (auto v = get("Nh")) c.Nh = static_cast<int>(parse_count("Nh", *v));
  if (auto v = get("ncycles")) c.ncycles = static_cast<std::size_t>(parse_count("ncycles", *v));
  if (auto v = get("settle")) c.settle = static_cast<std::size_t>(parse_count("settle", *v));
  if (auto v = number("kick")) c.kick = *v;

  require_positive("R", c.params.R);
  require_positive("L", c.params.L);
  require_positive("C", c.params.C);
  require_non_negative("Rc", c.params.Rc);
  require_non_negative("Ri", c.params.Ri);
  require_positive("vs", c.params.vs);
  require_positive("d", c.d);
  if (c.vo) require_positive("vo", *c.vo);
  if (c.T && !(*c.T > c.d)) throw ConfigError("config key 'T' must exceed the on-time d (s)");
  if (c.D && !(*c.D > 0.0 && *c.D < 1.0))
    throw ConfigError("config key 'D' must lie in (0, 1) (dimensionless)");
  if (c.Nh < 1) throw ConfigError("config key 'Nh' must be at least 1");
  return c;
}

ConverterConfig load_config(const std::optional<std::filesystem::path>& file,
                            const std::vector<std::string>& overrides) {
  std::map<std::string, std::string> entries;
  if (file) {
    std::ifstream in(*file);
    if (!in) throw ConfigError("cannot open config file '" + file->string() + "'");
    entries = read_entries(in, file->string());
  }
  bool set_T = false;
  bool set_D = false;
  for (const auto& item : overrides) {
    std::istringstream line(item);
    for (auto& [k, v] : read_entries(line, "--set " + item)) {
      // An override of T or D replaces whichever of the pair the file used.
      if (k == "T") {
        entries.erase("D");
        set_T = true;
      } else if (k == "D") {
        entries.erase("T");
        set_D = true;
      }
      entries[k] = v;
    }
  }
  if (set_T && set_D)
    throw ConfigError("exactly one of 'T' (switching period, s) and 'D' (duty, dimensionless) is required");
  return build_config(entries);
}

}  // namespace cotc::cli
