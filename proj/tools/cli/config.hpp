#pragma once

// Flat "key = value" converter configuration (SI units, '#' comments).

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <cotc/model.hpp>

namespace cotc::cli {

/// Invalid, missing or unknown configuration entries. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t n = 0;

  std::vector<double> samples() const;
};

/// "lo:hi:n", e.g. "0.2:1:200".
Range parse_range(const std::string& key, const std::string& text);

struct ConverterConfig {
  Scheme scheme = Scheme::VCotc;
  BuckParams params;
  std::optional<double> vc;  // absent: chosen so that T is a steady-state period
  std::optional<double> vo;  // present: duty sweeps hold vo fixed (vs = vo / D)
  double d = 0.0;
  std::optional<double> T;
  std::optional<double> D;
  double ma = 0.0;
  Range D_range{0.2, 1.0, 200};
  Range lambda_range{-2.0, 0.9, 200};
  Range ma_range{0.0, 2000.0, 20};
  int Nh = 2000;
  std::size_t ncycles = 1000;
  std::size_t settle = 500;
  double kick = 1e-4;

  double period() const { return T ? *T : d / *D; }
  double duty() const { return D ? *D : d / *T; }
  /// Source voltage at duty D: vo / D when vo is set, else vs.
  double vs_at(double duty) const { return vo ? *vo / duty : params.vs; }
  /// Params with vs replaced for duty D.
  BuckParams params_at(double duty) const;
};

/// Description of every accepted key with its unit, for --help.
const std::vector<std::pair<std::string, std::string>>& config_keys();

/// Parses "key = value" lines. Blank lines and text after '#' are ignored.
std::map<std::string, std::string> read_entries(std::istream& in, const std::string& origin);

/// Builds and validates a config from raw entries. Later sources override
/// earlier ones: file entries first, then --set overrides.
ConverterConfig build_config(const std::map<std::string, std::string>& entries);

ConverterConfig load_config(const std::optional<std::filesystem::path>& file,
                            const std::vector<std::string>& overrides);

}  // namespace cotc::cli
