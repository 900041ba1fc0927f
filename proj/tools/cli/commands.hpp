#pragma once

// Command dispatch: each command maps a validated config onto the analysis
// library and returns a result table.

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "table.hpp"

namespace cotc::cli {

struct Sweep {
  std::string key;  // lambda, D, T, d or ma
  Range range;
};

/// "KEY=lo:hi:n".
Sweep parse_sweep(const std::string& text);

struct CommandOptions {
  std::optional<std::string> formula;
  std::optional<Sweep> sweep;
  std::optional<double> lambda;
};

const std::vector<std::string>& command_names();

/// Runs every command except `examples`. Throws ConfigError for unknown
/// commands or unsupported option combinations; library errors propagate.
ResultTable run_command(const std::string& command, const ConverterConfig& cfg, const CommandOptions& opt);

}  // namespace cotc::cli
