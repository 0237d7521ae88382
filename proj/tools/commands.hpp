#pragma once

#include <map>
#include <string>
#include <vector>

#include "rdsir/scenario.hpp"

namespace rdsir::cli {

enum ExitCode : int {
  kOk = 0,
  kOther = 1,
  kUsage = 2,  // bad flags, malformed scenario or out-of-range value
  kInvariant = 3,
  kSolver = 4,
  kIo = 5,  // unreadable input or unwritable output
};

/// Where a scenario comes from plus the command-line overrides applied to it.
struct ScenarioSource {
  std::string path;
  std::string preset;
  std::string dt;    // empty: keep the scenario value
  std::string grid;  // "N" or "NXxNY"
  std::string t_end;
  std::vector<std::string> sets;  // "key=value"
};

struct LoadedScenario {
  ScenarioConfig config;
  std::map<std::string, std::string> overrides;
  std::vector<std::string> warnings;
};

LoadedScenario load_scenario(const ScenarioSource& src);

/// Parses argv and dispatches; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace rdsir::cli
