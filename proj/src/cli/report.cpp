#include "nonadd/cli/report.hpp"

#include <cmath>

namespace nonadd::cli {

using nlohmann::json;

namespace {

// Long eventually periodic blocks are summarized to keep reports readable.
constexpr std::size_t kMaxSetText = 256;

json hypotheses_json(const std::vector<NamedHypothesis>& hs) {
  json out = json::object();
  for (const auto& h : hs) {
    json entry = {{"verdict", to_string(h.verdict)}};
    if (!h.note.empty()) entry["note"] = h.note;
    out[h.name] = std::move(entry);
  }
  return out;
}

json numbers(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

}  // namespace

json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json to_json(const Interval& v) { return json::array({num(v.lo()), num(v.hi())}); }

json to_json(const MeasurableSet& s) {
  if (const Mask* m = std::get_if<Mask>(&s)) {
    json out = json::array();
    for (int i : mask_elements(*m)) out.push_back(i);
    return out;
  }
  const auto& ep = std::get<EpSet>(s);
  if (ep.is_finite()) {
    json out = json::array();
    for (auto i : ep.finite_elements()) out.push_back(i);
    return out;
  }
  std::string text = ep.to_string();
  if (text.size() > kMaxSetText) {
    text = "eventually periodic (prefix " + std::to_string(ep.prefix_length()) + ", period " +
           std::to_string(ep.period_length()) + ", min " + std::to_string(ep.min_element().value_or(0)) + ")";
  }
  return text;
}

json to_json(const Partition& p) {
  json blocks = json::array();
  for (const auto& b : p.blocks()) blocks.push_back(to_json(b));
  json out = {{"blocks", std::move(blocks)}};
  if (p.singleton_tail()) out["tail"] = "singletons";
  return out;
}

json to_json(const IntegralReport& r) {
  json out = {{"value", num(r.value)}, {"status", to_string(r.status)}, {"achieved_eps", num(r.achieved_eps)}};
  json trace = json::array();
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    const auto& t = r.trace[i];
    trace.push_back({{"partition_index", i}, {"block_count", t.block_count}, {"sum_lo", num(t.sum_lo)},
                     {"sum_hi", num(t.sum_hi)}});
  }
  out["trace"] = std::move(trace);
  if (!r.witness.empty()) {
    json w = json::array();
    for (const auto& wp : r.witness) {
      json e = to_json(wp.partition);
      e["block_count"] = wp.partition.block_count();
      e["sum_lo"] = num(wp.sums.lo);
      e["sum_hi"] = num(wp.sums.hi);
      w.push_back(std::move(e));
    }
    out["witness"] = std::move(w);
  }
  if (!r.partial_sums.empty()) {
    json ps = json::array();
    for (const auto& [k, v] : r.partial_sums) ps.push_back(json::array({k, num(v)}));
    out["partial_sums"] = std::move(ps);
  }
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

json to_json(const ComparisonReport& r) {
  json out = {{"rl", to_json(r.rl)}, {"gould", to_json(r.gould)}, {"birkhoff", to_json(r.birkhoff)},
              {"agree", r.agree}};
  if (!r.counterexample.empty()) out["counterexample"] = r.counterexample;
  return out;
}

json to_json(const PropertyReport& r) {
  json out = json::object();
  for (const auto& [name, flag] : r.flags()) {
    json e = {{"verdict", to_string(flag->verdict)}};
    if (!flag->rationale.empty()) e["rationale"] = flag->rationale;
    if (flag->witness) {
      json sets = json::array();
      for (const auto& s : flag->witness->sets) sets.push_back(to_json(s));
      e["witness"] = {{"sets", std::move(sets)}, {"description", flag->witness->description}};
    }
    out[name] = std::move(e);
  }
  out["submeasure"] = r.is_submeasure();
  return out;
}

json to_json(const SetFunctionIntegrability& r) {
  json out = {{"verdict", to_string(r.verdict)}};
  if (r.witness) {
    out["witness"] = to_json(*r.witness);
    out["integral"] = num(r.integral);
    out["value"] = num(r.value);
  }
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

json to_json(const InequalityReport& r) {
  return {{"kind", to_string(r.kind)}, {"p", num(r.p)},
          {"q", num(r.q)},             {"lhs", num(r.lhs)},
          {"rhs", num(r.rhs)},         {"holds", r.holds},
          {"applicable", r.applicable}, {"hypotheses", hypotheses_json(r.hypotheses)}};
}

json to_json(const ConvergenceReport& r) {
  json out = {{"mode", to_string(r.mode)},
              {"interval", r.interval},
              {"N", r.n_terms},
              {"tolerance", num(r.tolerance)},
              {"distances", numbers(r.distances)},
              {"verdict", r.verdict},
              {"exploratory", r.exploratory},
              {"hypotheses", hypotheses_json(r.hypotheses)}};
  if (!r.bounds.empty()) out["bounds"] = numbers(r.bounds);
  if (!r.auxiliary.empty()) out["auxiliary"] = numbers(r.auxiliary);
  if (r.scalar_sides) out["sides"] = json::array({num(r.scalar_sides->first), num(r.scalar_sides->second)});
  if (r.interval_sides) out["sides"] = json::array({to_json(r.interval_sides->first), to_json(r.interval_sides->second)});
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

json to_json(const IvIntegralReport& r) {
  json out = {{"value", to_json(r.value)}, {"lower", to_json(r.lower)}, {"upper", to_json(r.upper)}};
  if (r.minkowski_gap) out["minkowski_gap"] = num(*r.minkowski_gap);
  return out;
}

json to_json(const IvSuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e = {{"name", c.name},
              {"applicable", c.applicable},
              {"cases", c.cases},
              {"violations", c.violations},
              {"worst_excess", num(c.worst_excess)}};
    if (c.witness) e["witness"] = to_json(MeasurableSet{*c.witness});
    checks.push_back(std::move(e));
  }
  return {{"checks", std::move(checks)},
          {"variation_nu1", num(r.variation_nu1)},
          {"variation_nu2", num(r.variation_nu2)},
          {"violations", r.violations()}};
}

json to_json(const AtomIntegral& r) {
  return {{"point", r.point},
          {"value", to_json(r.value)},
          {"integral", to_json(r.integral)},
          {"matches_integral", r.matches_integral}};
}

json to_json(const std::vector<AtomConvergenceStep>& steps) {
  json out = json::array();
  for (const auto& s : steps) {
    out.push_back({{"n", s.n}, {"distance", num(s.distance)}, {"bound", num(s.bound)}, {"holds", s.holds}});
  }
  return out;
}

}  // namespace nonadd::cli
