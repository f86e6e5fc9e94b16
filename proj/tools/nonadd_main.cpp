#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nonadd/cli/runner.hpp"

namespace fs = std::filesystem;
using namespace nonadd::cli;

namespace {

bool write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

// Bare scenario names are looked up in the bundled directory.
fs::path resolve_scenario(const std::string& arg) {
  const fs::path p(arg);
  if (fs::exists(p) || p.has_parent_path()) return p;
  const fs::path dir = default_scenario_dir();
  for (const fs::path& c : {dir / p, dir / (arg + ".json")})
    if (fs::exists(c)) return c;
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemann-Lebesgue, Gould and Birkhoff integrals against non-additive set functions"};
  app.require_subcommand(1);

  RunOptions opts;
  std::string out_path;
  std::string trace_path;
  std::string scenario;
  std::string suite_dir;
  double tolerance = 0.0;
  bool no_meta = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Write the JSON report here instead of stdout");
    sub->add_option("--seed", opts.seed, "Seed for randomized scenarios")->default_val(kDefaultSeed);
    sub->add_option("--tolerance", tolerance, "Tolerance for expect comparisons")->check(CLI::PositiveNumber);
    sub->add_flag("--no-meta", no_meta, "Omit timestamps and durations from reports");
  };

  CLI::App* run = app.add_subcommand("run", "Run one scenario file");
  run->add_option("scenario", scenario, "Scenario file, or a name in $NONADD_SCENARIO_PATH")->required();
  run->add_option("--trace-csv", trace_path, "Write the refinement trace as CSV");
  add_common(run);

  CLI::App* suite = app.add_subcommand("suite", "Run every scenario of a directory");
  suite->add_option("dir", suite_dir, "Scenario directory (default: $NONADD_SCENARIO_PATH or the bundled suite)");
  suite->add_option("--jobs", opts.jobs, "Scenarios run concurrently")->check(CLI::PositiveNumber)->default_val(1);
  add_common(suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }
  opts.meta = !no_meta;
  if (tolerance > 0.0) opts.tolerance = tolerance;

  if (run->parsed()) {
    const ScenarioResult r = run_scenario_file(resolve_scenario(scenario), opts);
    if (!write_text(out_path, dump_report(r.report))) {
      std::cerr << "nonadd: cannot write " << out_path << "\n";
      return kExitInputError;
    }
    if (!trace_path.empty() && !write_text(trace_path, trace_csv(r.trace))) {
      std::cerr << "nonadd: cannot write " << trace_path << "\n";
      return kExitInputError;
    }
    if (!r.message.empty()) std::cerr << r.message << "\n";
    return r.exit_code;
  }

  const fs::path dir = suite_dir.empty() ? default_scenario_dir() : fs::path(suite_dir);
  const SuiteResult r = run_suite(dir, opts);
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  std::cerr << r.table;
  if (!write_text(out_path, dump_report(r.report))) {
    std::cerr << "nonadd: cannot write " << out_path << "\n";
    return kExitInputError;
  }
  return r.exit_code;
}
