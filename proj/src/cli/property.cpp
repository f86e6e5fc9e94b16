#include "nonadd/cli/property.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "nonadd/analysis.hpp"
#include "nonadd/cli/report.hpp"
#include "nonadd/error.hpp"
#include "nonadd/random.hpp"

namespace nonadd::cli {

using nlohmann::json;

namespace {

struct CaseResult {
  bool ok = true;
  double excess = 0.0;
  std::string detail;
};

using CaseFn = std::function<CaseResult(gen::Rng&)>;

double scale(double x) { return std::max(1.0, std::abs(x)); }

CaseResult rl_oracle(gen::Rng& rng) {
  const int n = gen::uniform_int(rng, 1, 8);
  const SetFunction nu = gen::table(rng, n);
  const GroundFunction f = gen::function(rng, n, -2.0, 2.0);
  double direct = 0.0;
  for (int i = 0; i < n; ++i) direct += f.at(static_cast<std::uint64_t>(i)) * nu(Mask{1} << i);
  const double rl = rl_value(f, nu);
  const double gould = gould_integrate(f, nu).value;
  const double birkhoff = birkhoff_simple_integrate(f, nu).value;
  CaseResult r;
  r.excess = std::abs(rl - direct);
  r.ok = r.excess <= 1e-12 * scale(direct) && gould == rl && birkhoff == rl;
  if (!r.ok) r.detail = "n = " + std::to_string(n);
  return r;
}

CaseResult inequality_case(gen::Rng& rng, InequalityKind kind, const std::vector<double>& ps) {
  const int n = gen::uniform_int(rng, 1, 6);
  const bool reverse = kind == InequalityKind::ReverseHolder || kind == InequalityKind::ReverseMinkowski;
  const double lo = reverse ? 0.05 : 0.0;
  const SetFunction nu = gen::additive(rng, n);
  const GroundFunction g = gen::function(rng, n, lo, 2.0);
  const GroundFunction h = gen::function(rng, n, lo, 2.0);
  const double p = ps[static_cast<std::size_t>(gen::uniform_int(rng, 0, static_cast<int>(ps.size()) - 1))];
  const InequalityReport rep = check_inequality(kind, g, h, nu, p, std::nullopt, 1e-10);
  CaseResult r;
  r.ok = rep.holds;
  r.excess = reverse ? rep.rhs - rep.lhs : rep.lhs - rep.rhs;
  if (!r.ok) r.detail = "p = " + std::to_string(p) + ", n = " + std::to_string(n);
  return r;
}

CaseResult seminorm_case(gen::Rng& rng) {
  const int n = gen::uniform_int(rng, 1, 6);
  const SetFunction nu = gen::additive(rng, n);
  const GroundFunction f = gen::function(rng, n, -2.0, 2.0);
  const GroundFunction g = gen::function(rng, n, -2.0, 2.0);
  const double alpha = gen::uniform(rng, -3.0, 3.0);
  const double p = 1.0 + 3.0 * gen::unit(rng);
  const double nf = seminorm_p(f, nu, p);
  const double homog = std::abs(seminorm_p(fn_scale(f, alpha), nu, p) - std::abs(alpha) * nf);
  const double tri = seminorm_p(fn_sum(f, g), nu, p) - nf - seminorm_p(g, nu, p);
  CaseResult r;
  r.excess = std::max(homog, tri);
  r.ok = homog <= 1e-10 * scale(nf * alpha) && tri <= 1e-10 * scale(nf);
  return r;
}

CaseResult fatou_case(gen::Rng& rng) {
  const int n = gen::uniform_int(rng, 1, 6);
  ScalarConvergenceInput in{gen::monotone(rng, n), std::nullopt, EventuallyPeriodicFamily{}, 2.0, 1e-3};
  const int head = gen::uniform_int(rng, 0, 2);
  const int cycle = gen::uniform_int(rng, 1, 4);
  for (int i = 0; i < head; ++i) in.periodic->head.push_back(gen::function(rng, n, 0.0, 3.0));
  for (int i = 0; i < cycle; ++i) in.periodic->cycle.push_back(gen::function(rng, n, 0.0, 3.0));
  const ConvergenceReport rep = run_convergence(ConvergenceMode::Fatou, in, {static_cast<std::size_t>(head + cycle), 1e-8});
  CaseResult r;
  r.ok = rep.verdict;
  r.excess = rep.scalar_sides->first - rep.scalar_sides->second;
  return r;
}

CaseResult iv_fatou_case(gen::Rng& rng) {
  const int n = gen::uniform_int(rng, 1, 6);
  const SetFunction nu1 = gen::monotone(rng, n);
  IvConvergenceInput in{IvSetFunction(nu1, SetFunction::sum({nu1, gen::monotone(rng, n)})), std::nullopt, {},
                        std::nullopt, 1e-3};
  const int cycle = gen::uniform_int(rng, 1, 4);
  for (int i = 0; i < cycle; ++i) in.terms.push_back(gen::iv_function(rng, n, 2.0));
  const ConvergenceReport rep = run_convergence(ConvergenceMode::Fatou, in, {static_cast<std::size_t>(cycle), 1e-8});
  CaseResult r;
  r.ok = rep.verdict;
  const auto& [lhs, rhs] = *rep.interval_sides;
  r.excess = std::max(lhs.lo() - rhs.lo(), lhs.hi() - rhs.hi());
  return r;
}

CaseResult endpoint_case(gen::Rng& rng) {
  const int n = gen::uniform_int(rng, 1, 7);
  const IvSetFunction gamma = gen::iv_table(rng, n);
  const IvFunction h = gen::iv_function(rng, n, 2.0);
  const Mask e = static_cast<Mask>(rng() & GroundSpace::finite(n).full_mask());
  CaseResult r;
  try {
    const IvIntegralReport rep = iv_rl_integrate(h, gamma, e);
    r.excess = rep.minkowski_gap.value_or(0.0);
    r.ok = r.excess <= 1e-12 * scale(rep.value.hi());
  } catch (const Error& err) {
    r.ok = false;
    r.detail = err.what();
  }
  return r;
}

CaseResult iv_suite_case(gen::Rng& rng) {
  const int n = gen::uniform_int(rng, 1, 5);
  const IvSetFunction gamma = gen::iv_submeasure(rng, n);
  const IvSetFunction gamma1 = gen::iv_submeasure(rng, n);
  const IvSetFunction gamma2 = iv_sum(gamma1, gen::iv_submeasure(rng, n));
  const IvFunction g = gen::iv_function(rng, n, 2.0);
  const IvFunction h = gen::iv_function(rng, n, 2.0);
  const IvSuiteReport rep = iv_monotonicity_suite(g, h, gamma, gamma1, gamma2, gen::uniform(rng, 0.0, 3.0));
  CaseResult r;
  for (const auto& c : rep.checks) {
    if (c.applicable && c.violations > 0) {
      r.ok = false;
      r.excess = std::max(r.excess, c.worst_excess);
      r.detail = c.name;
    }
  }
  return r;
}

const std::map<std::string, CaseFn>& families() {
  static const std::map<std::string, CaseFn> table = {
      {"rl_oracle", rl_oracle},
      {"holder", [](gen::Rng& r) { return inequality_case(r, InequalityKind::Holder, {1.5, 2.0, 3.0}); }},
      {"minkowski", [](gen::Rng& r) { return inequality_case(r, InequalityKind::Minkowski, {1.0, 1.5, 2.0, 3.0}); }},
      {"reverse_holder", [](gen::Rng& r) { return inequality_case(r, InequalityKind::ReverseHolder, {0.25, 0.5}); }},
      {"reverse_minkowski",
       [](gen::Rng& r) { return inequality_case(r, InequalityKind::ReverseMinkowski, {0.25, 0.5}); }},
      {"seminorm", seminorm_case},
      {"fatou", fatou_case},
      {"iv_fatou", iv_fatou_case},
      {"endpoint", endpoint_case},
      {"iv_suite", iv_suite_case},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& property_families() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, fn] : families()) v.push_back(k);
    return v;
  }();
  return names;
}

PropertyOutcome run_property(const std::string& family, std::size_t count, std::uint64_t seed) {
  const auto it = families().find(family);
  if (it == families().end()) throw InvalidArgument("unknown property family '" + family + "'");
  gen::Rng rng(seed);
  PropertyOutcome out;
  double worst = 0.0;
  json first_failure;
  for (std::size_t i = 0; i < count; ++i) {
    const CaseResult c = it->second(rng);
    worst = std::max(worst, c.excess);
    if (!c.ok) {
      if (out.violations == 0) first_failure = {{"case", i}, {"excess", num(c.excess)}, {"detail", c.detail}};
      ++out.violations;
    }
  }
  out.result = {{"family", family},
                {"seed", seed},
                {"cases", count},
                {"violations", out.violations},
                {"worst_excess", num(worst)}};
  if (out.violations > 0) out.result["first_failure"] = first_failure;
  return out;
}

}  // namespace nonadd::cli
