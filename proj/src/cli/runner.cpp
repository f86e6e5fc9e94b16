#include "nonadd/cli/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <typeinfo>

#include "nonadd/analysis.hpp"
#include "nonadd/cli/property.hpp"
#include "nonadd/cli/report.hpp"
#include "nonadd/cli/scenario.hpp"
#include "nonadd/cli/schema.hpp"
#include "nonadd/error.hpp"

#ifndef NONADD_BUNDLED_SCENARIOS
#define NONADD_BUNDLED_SCENARIOS "scenarios/theorems"
#endif

namespace nonadd::cli {

using nlohmann::json;

namespace {

struct Outcome {
  json result;
  bool failed = false;
  std::vector<TraceEntry> trace;
};

GouldOptions gould_options(const ScenarioReader& r) {
  GouldOptions o;
  o.budget = r.count("/params/budget", o.budget);
  o.tolerance = r.number("/params/gould_tolerance", o.tolerance);
  o.delta = r.number("/params/delta", o.delta);
  o.run_length = r.count("/params/run_length", o.run_length);
  return o;
}

Outcome cmd_integrate(const ScenarioReader& r) {
  const GroundFunction f = r.function("/f");
  const SetFunction nu = r.set_function("/nu");
  const MeasurableSet e = r.set_or_full("/set");
  const std::string method = r.text("/params/method", "rl");
  IntegralReport rep;
  if (method == "rl") {
    rep = rl_integrate(f, nu, e);
  } else if (method == "gould" || method == "birkhoff") {
    const GroundFunction fe = r.has("/set") ? fn_restrict(f, e) : f;
    rep = method == "gould" ? gould_integrate(fe, nu, gould_options(r)) : birkhoff_simple_integrate(fe, nu);
  } else {
    throw InputError("/params/method", "unknown integration method '" + method + "'");
  }
  Outcome o{to_json(rep), false, rep.trace};
  o.result["method"] = method;
  o.result["set"] = to_json(e);
  return o;
}

Outcome cmd_variation(const ScenarioReader& r) {
  const SetFunction nu = r.set_function("/nu");
  const MeasurableSet e = r.set_or_full("/set");
  return {{{"set", to_json(e)}, {"variation", num(variation(nu, e))}, {"semivariation", num(semivariation(nu, e))}},
          false,
          {}};
}

Outcome cmd_atoms(const ScenarioReader& r) {
  const SetFunction nu = r.set_function("/nu");
  json atoms = json::array();
  for (Mask a : find_atoms(nu)) atoms.push_back(to_json(MeasurableSet{a}));
  return {{{"atoms", std::move(atoms)}}, false, {}};
}

Outcome cmd_classify(const ScenarioReader& r) {
  const SetFunction nu = r.set_function("/nu");
  return {{{"properties", to_json(classify(nu))}, {"rl_integrable", to_json(is_rl_integrable_setfunction(nu))}},
          false,
          {}};
}

Outcome cmd_compare(const ScenarioReader& r) {
  const ComparisonReport rep = compare_integrals(r.function("/f"), r.set_function("/nu"), gould_options(r),
                                                 r.number("/params/tolerance", 1e-9));
  return {to_json(rep), false, rep.gould.trace};
}

Outcome cmd_inequality(const ScenarioReader& r) {
  const InequalityKind kind =
      at_field("/params/kind", [&] { return parse_inequality_kind(r.text("/params/kind", "holder")); });
  std::optional<double> q;
  if (r.has("/params/q")) q = r.number("/params/q", 0.0);
  const InequalityReport rep = check_inequality(kind, r.function("/g"), r.function("/h"), r.set_function("/nu"),
                                                r.number("/params/p", 2.0), q, r.number("/params/tolerance", 1e-12));
  return {to_json(rep), rep.applicable && !rep.holds, {}};
}

Outcome cmd_converge(const ScenarioReader& r) {
  const ConvergenceMode mode =
      at_field("/params/mode", [&] { return parse_convergence_mode(r.text("/params/mode", "uniform")); });
  ConvergenceOptions opts;
  opts.n_terms = r.count("/sequence/N", r.count("/params/N", opts.n_terms));
  opts.tolerance = r.number("/params/tolerance", opts.tolerance);
  ConvergenceReport rep;
  if (r.has("/Gamma")) {
    IvConvergenceInput in{r.iv_set_function("/Gamma"), r.iv_geometric_family("/sequence"), r.iv_terms("/sequence"),
                          std::nullopt, r.number("/params/epsilon", 1e-3)};
    if (r.has("/params/atom")) {
      const MeasurableSet b = r.set("/params/atom");
      if (!std::holds_alternative<Mask>(b)) throw InputError("/params/atom", "atoms need a finite space");
      in.atom = std::get<Mask>(b);
    }
    rep = run_convergence(mode, in, opts);
  } else {
    ScalarConvergenceInput in{r.set_function("/nu"), r.geometric_family("/sequence"), r.periodic_family("/sequence"),
                              r.number("/params/p", 2.0), r.number("/params/epsilon", 1e-3)};
    rep = run_convergence(mode, in, opts);
  }
  return {to_json(rep), !rep.verdict && !rep.exploratory, {}};
}

Outcome cmd_iv_integrate(const ScenarioReader& r) {
  const MeasurableSet e = r.set_or_full("/set");
  json res = to_json(iv_rl_integrate(r.iv_function("/H"), r.iv_set_function("/Gamma"), e));
  res["set"] = to_json(e);
  return {std::move(res), false, {}};
}

Outcome cmd_iv_suite(const ScenarioReader& r) {
  const IvSetFunction gamma = r.iv_set_function("/Gamma");
  const IvSetFunction gamma1 = r.has("/Gamma1") ? r.iv_set_function("/Gamma1") : gamma;
  const IvSetFunction gamma2 = r.has("/Gamma2") ? r.iv_set_function("/Gamma2") : gamma;
  const IvSuiteReport rep = iv_monotonicity_suite(r.iv_function("/G"), r.iv_function("/H"), gamma, gamma1, gamma2,
                                                  r.number("/params/alpha", 2.0));
  bool failed = false;
  for (const auto& c : rep.checks) failed = failed || (c.applicable && c.violations > 0);
  return {to_json(rep), failed, {}};
}

Outcome cmd_atom_integrate(const ScenarioReader& r) {
  const IvSetFunction gamma = r.iv_set_function("/Gamma");
  const MeasurableSet b = r.set("/params/atom");
  if (!std::holds_alternative<Mask>(b)) throw InputError("/params/atom", "atoms need a finite space");
  const Mask atom = std::get<Mask>(b);
  const AtomIntegral ai = iv_atom_integral(r.iv_function("/H"), gamma, atom);
  json res = to_json(ai);
  bool failed = !ai.matches_integral;
  if (auto fam = r.iv_geometric_family("/sequence")) {
    std::vector<IvFunction> seq;
    const std::size_t n = r.count("/sequence/N", 30);
    for (std::size_t i = 1; i <= n; ++i) seq.push_back(fam->term(i));
    const auto steps = atom_convergence(seq, fam->base, gamma, atom);
    std::vector<double> d;
    for (const auto& s : steps) {
      failed = failed || !s.holds;
      d.push_back(s.distance);
    }
    res["steps"] = to_json(steps);
    res["converges"] = limit_verdict(d, r.number("/params/tolerance", 1e-8));
    failed = failed || !res["converges"].get<bool>();
  }
  return {std::move(res), failed, {}};
}

Outcome cmd_property(const ScenarioReader& r, std::uint64_t seed) {
  const std::string family = r.text("/params/family", "");
  PropertyOutcome p =
      at_field("/params/family", [&] { return run_property(family, r.count("/params/count", 100), seed); });
  return {std::move(p.result), p.violations > 0, {}};
}

Outcome dispatch(const std::string& command, const ScenarioReader& r, std::uint64_t seed) {
  if (command == "integrate") return cmd_integrate(r);
  if (command == "variation") return cmd_variation(r);
  if (command == "atoms") return cmd_atoms(r);
  if (command == "classify") return cmd_classify(r);
  if (command == "compare") return cmd_compare(r);
  if (command == "inequality") return cmd_inequality(r);
  if (command == "converge") return cmd_converge(r);
  if (command == "iv-integrate") return cmd_iv_integrate(r);
  if (command == "iv-suite") return cmd_iv_suite(r);
  if (command == "atom-integrate") return cmd_atom_integrate(r);
  if (command == "property") return cmd_property(r, seed);
  throw InputError("/command", "unknown command '" + command + "'");
}

bool matches(const json& expected, const json& actual, double tol) {
  if (expected.is_number() && actual.is_number()) {
    const double e = expected.get<double>();
    const double a = actual.get<double>();
    return std::abs(a - e) <= tol * std::max(1.0, std::abs(e));
  }
  if (expected.is_array() && actual.is_array()) {
    if (expected.size() != actual.size()) return false;
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (!matches(expected[i], actual[i], tol)) return false;
    return true;
  }
  return expected == actual;
}

json check_expectations(const json& expect, const json& result, double tol, bool& failed) {
  json checks = json::array();
  for (const auto& [pointer, expected] : expect.items()) {
    json entry = {{"pointer", pointer}, {"expected", expected}};
    bool ok = false;
    try {
      const json::json_pointer ptr(pointer);
      if (result.contains(ptr)) {
        entry["actual"] = result.at(ptr);
        ok = matches(expected, result.at(ptr), tol);
      } else {
        entry["actual"] = nullptr;
      }
    } catch (const json::exception&) {
      throw InputError("/expect/" + pointer, "invalid JSON pointer");
    }
    entry["ok"] = ok;
    failed = failed || !ok;
    checks.push_back(std::move(entry));
  }
  return checks;
}

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Scenario field carrying the premise a HypothesisViolated names.
std::string hypothesis_field(const std::string& name) {
  if (name == "h_strictly_positive") return "/h";
  if (name == "uniform_convergence" || name == "ae_convergence" || name == "converges_in_measure" ||
      name == "p_norm_convergence" || name == "increasing_sequence") {
    return "/sequence";
  }
  return "/params";
}

std::string error_line(const std::string& label, const std::string& field, const std::string& message) {
  return label + ": " + (field.empty() ? "/" : field) + ": " + message;
}

}  // namespace

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

ScenarioResult run_scenario(const json& doc, const std::string& label, const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  ScenarioResult res;
  std::string name = label;
  if (doc.is_object()) {
    if (doc.contains("name") && doc["name"].is_string()) name = doc["name"].get<std::string>();
    if (doc.contains("tag") && doc["tag"].is_string()) res.tag = doc["tag"].get<std::string>();
    if (doc.contains("required") && doc["required"].is_boolean()) res.required = doc["required"].get<bool>();
  }
  int expect_exit = kExitOk;
  if (doc.is_object() && doc.contains("expect_exit") && doc["expect_exit"].is_number_integer()) {
    expect_exit = doc["expect_exit"].get<int>();
  }
  json report = {{"scenario", std::filesystem::path(label).filename().string()}, {"name", name}, {"seed", opts.seed}};
  if (!res.tag.empty()) report["tag"] = res.tag;
  if (doc.is_object() && doc.contains("command")) report["command"] = doc["command"];

  auto fail = [&](int code, const std::string& kind, const std::string& field, const std::string& message) {
    res.exit_code = code;
    res.message = error_line(label, field, message);
    report["error"] = {{"kind", kind}, {"field", field.empty() ? "/" : field}, {"message", message}};
  };

  const auto schema_errors = scenario_schema().validate(doc);
  if (!schema_errors.empty()) {
    const auto& first = schema_errors.front();
    fail(kExitInputError, "schema", first.path, first.message);
    json all = json::array();
    for (const auto& e : schema_errors) all.push_back({{"field", e.path.empty() ? "/" : e.path}, {"message", e.message}});
    report["error"]["all"] = std::move(all);
  } else {
    try {
      const ScenarioReader reader(doc);
      const std::string command = doc["command"].get<std::string>();
      Outcome out = at_field("/command", [&] { return dispatch(command, reader, opts.seed); });
      bool failed = out.failed;
      if (doc.contains("expect")) {
        const double tol = opts.tolerance.value_or(reader.number("/expect_tolerance", 1e-9));
        report["checks"] = check_expectations(doc["expect"], out.result, tol, failed);
      }
      report["result"] = std::move(out.result);
      res.trace = std::move(out.trace);
      if (failed) {
        res.exit_code = kExitCheckFailed;
        res.message = error_line(label, "/expect", "a theorem check or expectation failed");
      }
    } catch (const InputError& e) {
      fail(kExitInputError, "input", e.field(), e.what());
    } catch (const HypothesisViolated& e) {
      fail(kExitHypothesis, "hypothesis", hypothesis_field(e.name()), e.what());
      report["error"]["hypothesis"] = e.name();
      report["error"]["witness"] = e.witness();
    } catch (const Error& e) {
      // Plain Error marks an internal consistency check (e.g. the Minkowski cross-check).
      if (typeid(e) == typeid(Error)) {
        fail(kExitCheckFailed, "consistency", "/command", e.what());
      } else {
        fail(kExitInputError, "input", "/command", e.what());
      }
    } catch (const json::exception& e) {
      fail(kExitInputError, "input", "/", e.what());
    }
  }
  res.passed = res.exit_code == expect_exit;
  report["exit_code"] = res.exit_code;
  report["expect_exit"] = expect_exit;
  report["passed"] = res.passed;
  if (opts.meta) {
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["meta"] = {{"timestamp", iso_timestamp()}, {"duration_ms", ms}, {"path", label}};
  }
  res.report = std::move(report);
  return res;
}

ScenarioResult run_scenario_file(const std::filesystem::path& path, const RunOptions& opts) {
  const std::string label = path.string();
  std::ifstream in(path);
  if (!in) {
    ScenarioResult res;
    res.exit_code = kExitInputError;
    res.message = error_line(label, "/", "cannot open scenario file");
    res.report = {{"scenario", path.filename().string()},
                  {"name", path.filename().string()},
                  {"seed", opts.seed},
                  {"error", {{"kind", "io"}, {"field", "/"}, {"message", "cannot open scenario file"}}},
                  {"exit_code", res.exit_code},
                  {"expect_exit", 0},
                  {"passed", false}};
    return res;
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    ScenarioResult res;
    res.exit_code = kExitInputError;
    res.message = error_line(label, "/", e.what());
    res.report = {{"scenario", path.filename().string()},
                  {"name", path.filename().string()},
                  {"seed", opts.seed},
                  {"error", {{"kind", "parse"}, {"field", "/"}, {"message", e.what()}}},
                  {"exit_code", res.exit_code},
                  {"expect_exit", 0},
                  {"passed", false}};
    return res;
  }
  return run_scenario(doc, label, opts);
}

SuiteResult run_suite(const std::filesystem::path& dir, const RunOptions& opts) {
  SuiteResult suite;
  std::vector<std::filesystem::path> files;
  if (!std::filesystem::is_directory(dir)) {
    suite.exit_code = kExitInputError;
    suite.warnings.push_back(dir.string() + ": not a directory");
    suite.report = {{"suite", dir.filename().string()}, {"scenarios", 0}, {"error", "not a directory"}};
    return suite;
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) suite.warnings.push_back(dir.string() + ": no scenarios found");

  std::vector<ScenarioResult> results(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) results[i] = run_scenario_file(files[i], opts);
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(opts.jobs, files.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  struct Tally {
    std::size_t pass = 0;
    std::size_t fail = 0;
  };
  std::map<std::string, Tally> tags;
  json reports = json::array();
  std::size_t passed = 0;
  std::size_t failed_required = 0;
  for (auto& r : results) {
    const std::string tag = r.tag.empty() ? "untagged" : r.tag;
    if (r.passed) {
      ++tags[tag].pass;
      ++passed;
    } else {
      ++tags[tag].fail;
      if (r.required) ++failed_required;
      if (!r.message.empty()) suite.warnings.push_back(r.message);
    }
    reports.push_back(std::move(r.report));
  }
  json by_tag = json::object();
  std::ostringstream table;
  char line[160];
  std::snprintf(line, sizeof line, "%-28s %6s %6s\n", "tag", "pass", "fail");
  table << line;
  for (const auto& [tag, t] : tags) {
    by_tag[tag] = {{"pass", t.pass}, {"fail", t.fail}};
    std::snprintf(line, sizeof line, "%-28s %6zu %6zu\n", tag.c_str(), t.pass, t.fail);
    table << line;
  }
  std::snprintf(line, sizeof line, "%-28s %6zu %6zu\n", "total", passed, results.size() - passed);
  table << line;
  suite.table = table.str();
  suite.exit_code = failed_required > 0 ? kExitCheckFailed : kExitOk;
  suite.report = {{"suite", dir.filename().string()},
                  {"seed", opts.seed},
                  {"scenarios", results.size()},
                  {"passed", passed},
                  {"failed", results.size() - passed},
                  {"failed_required", failed_required},
                  {"tags", std::move(by_tag)},
                  {"reports", std::move(reports)},
                  {"exit_code", suite.exit_code}};
  if (opts.meta) suite.report["meta"] = {{"timestamp", iso_timestamp()}, {"path", dir.string()}, {"jobs", jobs}};
  return suite;
}

std::string trace_csv(const std::vector<TraceEntry>& trace) {
  std::ostringstream os;
  os << "partition_index,block_count,sum_lo,sum_hi\n";
  char buf[96];
  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", trace[i].sum_lo, trace[i].sum_hi);
    os << i << ',' << trace[i].block_count << ',' << buf << '\n';
  }
  return os.str();
}

std::filesystem::path default_scenario_dir() {
  if (const char* env = std::getenv("NONADD_SCENARIO_PATH"); env && *env) return env;
  return NONADD_BUNDLED_SCENARIOS;
}

}  // namespace nonadd::cli
