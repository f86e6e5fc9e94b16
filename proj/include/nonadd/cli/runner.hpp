#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nonadd/rl_integral.hpp"

namespace nonadd::cli {

/// Seed used by randomized scenarios when --seed is not given.
inline constexpr std::uint64_t kDefaultSeed = 20240611;

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitInputError = 2, kExitHypothesis = 3 };

struct RunOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Overrides the tolerance of `expect` comparisons.
  std::optional<double> tolerance;
  /// Include the "meta" block (timestamp, duration).
  bool meta = true;
  std::size_t jobs = 1;
};

struct ScenarioResult {
  int exit_code = kExitOk;
  /// exit_code equals the scenario's expect_exit.
  bool passed = false;
  bool required = true;
  std::string tag;
  nlohmann::json report;
  std::vector<TraceEntry> trace;
  /// "<file>: <field>: <message>" for failures.
  std::string message;
};

ScenarioResult run_scenario(const nlohmann::json& doc, const std::string& label, const RunOptions& opts);
ScenarioResult run_scenario_file(const std::filesystem::path& path, const RunOptions& opts);

struct SuiteResult {
  int exit_code = kExitOk;
  nlohmann::json report;
  /// Human-readable summary per tag.
  std::string table;
  std::vector<std::string> warnings;
};

/// Runs every *.json file of `dir` in name order; never stops early.
SuiteResult run_suite(const std::filesystem::path& dir, const RunOptions& opts);

/// CSV with columns partition_index, block_count, sum_lo, sum_hi.
std::string trace_csv(const std::vector<TraceEntry>& trace);

/// $NONADD_SCENARIO_PATH if set, else the bundled theorem scenarios.
std::filesystem::path default_scenario_dir();

/// Serialized report as written by the tool (two-space indent, trailing newline).
std::string dump_report(const nlohmann::json& report);

}  // namespace nonadd::cli
