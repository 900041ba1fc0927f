#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cotc/errors.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "regression.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericError = 3;
constexpr int kRegressionFailure = 4;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("cotc");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  const char* level = std::getenv("COTC_LOG");
  const std::string lv = level ? level : "error";
  if (lv == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else if (lv == "info") {
    spdlog::set_level(spdlog::level::info);
  } else {
    spdlog::set_level(spdlog::level::err);
  }
}

std::string footer() {
  std::string out = "Config keys (SI units):\n";
  for (const auto& [key, desc] : cotc::cli::config_keys()) out += "  " + key + "  " + desc + "\n";
  out += "\nExit codes: 0 ok, 2 config error, 3 numeric error, 4 regression failure.\n";
  out += "COTC_LOG=error|info|debug sets diagnostics on stderr.\n";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Stability and bifurcation boundaries of constant on-time controlled buck converters"};
  app.footer(footer());

  std::string command;
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_path;
  std::string format = "csv";
  std::optional<int> nh;
  std::optional<std::size_t> cycles;
  std::optional<std::string> formula;
  std::optional<std::string> sweep;
  std::optional<double> lambda;

  std::string commands;
  for (const auto& c : cotc::cli::command_names()) commands += (commands.empty() ? "" : " | ") + c;
  app.add_option("command", command, commands)->required();
  app.add_option("--config", config_path, "Config file (key = value)");
  app.add_option("--set", sets, "Override KEY=VALUE (repeatable)");
  app.add_option("--out", out_path, "Write the table here instead of stdout");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--nh", nh, "Harmonic truncation (overrides Nh)");
  app.add_option("--cycles", cycles, "Simulated cycles (overrides ncycles)");
  app.add_option("--formula", formula, "Restrict to one formula id");
  app.add_option("--sweep", sweep, "Swept quantity KEY=lo:hi:n");
  app.add_option("--lambda", lambda, "S-plot pole position (default -1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (command == "examples") {
      const auto rows = cotc::cli::run_examples();
      cotc::cli::print_regression(std::cout, rows);
      for (const auto& r : rows)
        if (!r.pass) return kRegressionFailure;
      return kOk;
    }

    if (nh) sets.push_back("Nh=" + std::to_string(*nh));
    if (cycles) sets.push_back("ncycles=" + std::to_string(*cycles));
    std::optional<std::filesystem::path> file;
    if (!config_path.empty()) file = config_path;
    const auto cfg = cotc::cli::load_config(file, sets);

    cotc::cli::CommandOptions opt;
    opt.formula = formula;
    opt.lambda = lambda;
    if (sweep) opt.sweep = cotc::cli::parse_sweep(*sweep);

    const auto table = cotc::cli::run_command(command, cfg, opt);

    std::ofstream file_out;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
      file_out.open(out_path);
      if (!file_out) throw cotc::cli::ConfigError("cannot open --out file " + out_path);
      out = &file_out;
    }
    if (format == "json") {
      table.write_json(*out);
    } else {
      table.write_csv(*out);
    }
    return kOk;
  } catch (const cotc::cli::ConfigError& e) {
    spdlog::error("{}: {}", command, e.what());
    return kConfigError;
  } catch (const cotc::UsageError& e) {
    spdlog::error("{}: {}", command, e.what());
    return kConfigError;
  } catch (const cotc::Error& e) {
    spdlog::error("{}: {}", command, e.what());
    return kNumericError;
  }
}
