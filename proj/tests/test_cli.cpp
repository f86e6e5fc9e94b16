#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "nonadd/cli/runner.hpp"
#include "nonadd/cli/schema.hpp"

using namespace nonadd::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kBundled = fs::path(NONADD_SOURCE_DIR) / "scenarios" / "theorems";

json integrate_doc() {
  return json::parse(R"({
    "space": {"finite": 3},
    "nu": {"table": {"0b001": 0.5, "0b010": 0.25, "0b100": 1.0, "0b011": 0.6,
                     "0b101": 1.2, "0b110": 1.1, "0b111": 1.4}},
    "f": [2, -1, 0.5],
    "command": "integrate",
    "expect": {"/value": 1.25}
  })");
}

RunOptions quiet() {
  RunOptions o;
  o.meta = false;
  return o;
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("nonadd_test_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path / name) << text; }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_tool(const std::string& args) {
  const int status = std::system((std::string(NONADD_TOOL) + " " + args + " >/dev/null 2>&1").c_str());
#ifdef WEXITSTATUS
  return WEXITSTATUS(status);
#else
  return status;
#endif
}

}  // namespace

TEST_CASE("a valid scenario passes and reports") {
  const ScenarioResult r = run_scenario(integrate_doc(), "inline", quiet());
  CHECK(r.exit_code == kExitOk);
  CHECK(r.passed);
  CHECK(r.report["result"]["value"] == 1.25);
  CHECK(r.report["result"]["status"] == "Exact");
  CHECK_FALSE(r.report.contains("meta"));
  CHECK(report_schema().validate(r.report).empty());
}

TEST_CASE("failed expectations exit 1") {
  json doc = integrate_doc();
  doc["expect"]["/value"] = 1.5;
  const ScenarioResult r = run_scenario(doc, "inline", quiet());
  CHECK(r.exit_code == kExitCheckFailed);
  CHECK_FALSE(r.passed);
  RunOptions loose = quiet();
  loose.tolerance = 0.5;
  CHECK(run_scenario(doc, "inline", loose).exit_code == kExitOk);
}

TEST_CASE("schema errors name the offending field") {
  json doc = integrate_doc();
  doc["nu"]["table"]["0b001"] = -1.0;
  ScenarioResult r = run_scenario(doc, "inline", quiet());
  CHECK(r.exit_code == kExitInputError);
  CHECK(r.report["error"]["field"] == "/nu/table/0b001");

  doc = integrate_doc();
  doc["f"][1] = "x";
  r = run_scenario(doc, "inline", quiet());
  CHECK(r.exit_code == kExitInputError);
  CHECK(r.report["error"]["field"] == "/f/1");

  doc = integrate_doc();
  doc["command"] = "integrat";
  r = run_scenario(doc, "inline", quiet());
  CHECK(r.exit_code == kExitInputError);
  CHECK(r.report["error"]["field"] == "/command");

  doc = integrate_doc();
  doc.erase("space");
  r = run_scenario(doc, "inline", quiet());
  CHECK(r.exit_code == kExitInputError);
  CHECK(r.message.find("space") != std::string::npos);
  CHECK(report_schema().validate(r.report).empty());
}

TEST_CASE("semantic input errors name the offending field") {
  json doc = integrate_doc();
  doc["f"] = json::array({1, 2});
  ScenarioResult r = run_scenario(doc, "inline", quiet());
  CHECK(r.exit_code == kExitInputError);
  CHECK(r.report["error"]["field"] == "/f");

  doc = integrate_doc();
  doc["nu"]["table"]["0b1001"] = 1.0;
  r = run_scenario(doc, "inline", quiet());
  CHECK(r.exit_code == kExitInputError);
  CHECK(r.report["error"]["field"].get<std::string>().rfind("/nu", 0) == 0);
}

TEST_CASE("hypothesis violations exit 3") {
  const ScenarioResult r = run_scenario_file(kBundled / "reverse_holder_zero_h.json", quiet());
  CHECK(r.exit_code == kExitHypothesis);
  CHECK(r.passed);
  CHECK(r.report["error"]["hypothesis"] == "h_strictly_positive");
  CHECK(r.report["error"]["field"] == "/h");
}

TEST_CASE("every bundled scenario validates and passes") {
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(kBundled)) {
    if (entry.path().extension() != ".json") continue;
    ++count;
    const json doc = json::parse(slurp(entry.path()));
    CHECK_MESSAGE(scenario_schema().validate(doc).empty(), entry.path().filename());
    const ScenarioResult r = run_scenario_file(entry.path(), quiet());
    CHECK_MESSAGE(r.passed, r.message);
    CHECK_MESSAGE(report_schema().validate(r.report).empty(), entry.path().filename());
  }
  CHECK(count >= 40);
}

TEST_CASE("suite isolates malformed files") {
  TempDir dir;
  dir.write("a_good.json", integrate_doc().dump());
  dir.write("b_broken.json", "{ \"space\": ");
  dir.write("c_bad_schema.json", R"({"space": {"finite": 2}, "command": "integrate"})");
  dir.write("notes.txt", "ignored");
  const SuiteResult s = run_suite(dir.path, quiet());
  CHECK(s.exit_code == kExitCheckFailed);
  CHECK(s.report["scenarios"] == 3);
  CHECK(s.report["passed"] == 1);
  CHECK(s.report["reports"][1]["error"]["kind"] == "parse");
  CHECK(s.report["reports"][2]["exit_code"] == kExitInputError);
  CHECK(s.warnings.size() == 2);
  CHECK(report_schema().validate(s.report).empty());
}

TEST_CASE("optional scenarios do not fail the suite") {
  TempDir dir;
  json doc = integrate_doc();
  doc["expect"]["/value"] = 9.0;
  doc["required"] = false;
  dir.write("x.json", doc.dump());
  CHECK(run_suite(dir.path, quiet()).exit_code == kExitOk);
}

TEST_CASE("an empty directory is a warning, not an error") {
  TempDir dir;
  const SuiteResult s = run_suite(dir.path, quiet());
  CHECK(s.exit_code == kExitOk);
  CHECK(s.warnings.size() == 1);
  CHECK(s.report["scenarios"] == 0);
  CHECK(run_suite(dir.path / "missing", quiet()).exit_code == kExitInputError);
}

TEST_CASE("trace csv") {
  const ScenarioResult r = run_scenario_file(kBundled / "counterexample_nat.json", quiet());
  const std::string csv = trace_csv(r.trace);
  CHECK(csv.rfind("partition_index,block_count,sum_lo,sum_hi\n", 0) == 0);
  CHECK(csv.find("\n9,10,10,10\n") != std::string::npos);
}

TEST_CASE("suite reports are deterministic for a fixed seed") {
  RunOptions o = quiet();
  o.seed = 7;
  const std::string a = dump_report(run_suite(kBundled, o).report);
  o.jobs = 3;
  const std::string b = dump_report(run_suite(kBundled, o).report);
  CHECK(a == b);
  o.seed = 8;
  CHECK(dump_report(run_suite(kBundled, o).report) != a);
}

TEST_CASE("non-finite numbers serialize as strings") {
  json doc = json::parse(R"({
    "space": "nat",
    "nu": {"cardinality_rule": {"finite": 0.5, "infinite": 1}},
    "command": "variation",
    "set": "all"
  })");
  const ScenarioResult r = run_scenario(doc, "inline", quiet());
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report["result"]["variation"] == "inf");
}

TEST_CASE("command line") {
  TempDir dir;
  dir.write("ok.json", integrate_doc().dump());
  const fs::path out = dir.path / "out.json";
  CHECK(run_tool("run " + (dir.path / "ok.json").string() + " --no-meta --out " + out.string()) == 0);
  const json report = json::parse(slurp(out));
  CHECK(report["result"]["value"] == 1.25);
  CHECK(run_tool("run " + (dir.path / "missing.json").string()) == kExitInputError);
  CHECK(run_tool("run --bogus-flag") == kExitInputError);
  CHECK(run_tool("run counterexample_nat --no-meta --trace-csv " + (dir.path / "t.csv").string()) == 0);
  CHECK(slurp(dir.path / "t.csv").rfind("partition_index", 0) == 0);
  fs::remove(out);
  fs::remove(dir.path / "t.csv");
  CHECK(run_tool("suite " + dir.path.string() + " --no-meta --out " + (dir.path / "suite.out").string()) == 0);
}
