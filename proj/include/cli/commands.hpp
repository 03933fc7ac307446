#pragma once

#include <string>
#include <vector>

#include "cli/config.hpp"

namespace cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitInconclusive = 3;

struct Target {
  std::string name;
  double value = 0;
  std::string provenance;  // paper, derived, extrapolated
};

struct Report {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  json summary = json::object();
  std::vector<Target> targets;
  int status = kExitOk;

  void add_row(std::vector<std::string> r);
  std::string csv() const;
  json to_json(const RunConfig& cfg) const;
};

// Fixed-format number for CSV cells (same bytes on every run).
std::string fmt(double x);

// Runs a validated configuration. Validation problems throw ConfigError.
Report run(const RunConfig& cfg);

// Parses the command line (CLI11, with --config key = value files) into a configuration.
RunConfig parse_args(int argc, const char* const* argv);

// Full front end: parse, run, write outputs; returns the exit code.
int main_entry(int argc, const char* const* argv);

std::string version();

}  // namespace cli
