#include "nonadd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nonadd/error.hpp"

namespace nonadd {

double seminorm_p(const GroundFunction& f, const SetFunction& nu, double p) {
  if (!(std::isfinite(p) && p != 0.0)) throw InvalidArgument("seminorm exponent must be finite and nonzero");
  if (p < 0.0 && extrema_of(fn_abs_pow(f, 1.0), full_set(f.space())).inf <= 0.0) {
    throw InvalidArgument("a negative exponent needs |f| bounded away from zero");
  }
  const double integral = rl_value(fn_abs_pow(f, p), nu);
  if (integral == 0.0) return p > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return p == 1.0 ? integral : std::pow(integral, 1.0 / p);
}

// ---------------------------------------------------------------------------
// RL-integrable set functions

namespace {

std::vector<MeasurableSet> nat_probes() {
  std::vector<MeasurableSet> probes;
  probes.emplace_back(EpSet::all());
  for (std::uint64_t k = 0; k < 4; ++k) probes.emplace_back(EpSet::of({k}));
  probes.emplace_back(EpSet::of({0, 1}));
  probes.emplace_back(EpSet::of({0, 1, 2, 3}));
  for (std::uint64_t k = 1; k < 4; ++k) probes.emplace_back(EpSet::tail_from(k));
  for (std::uint64_t m = 2; m <= 3; ++m)
    for (std::uint64_t r = 0; r < m; ++r) probes.emplace_back(EpSet::residue_class(r, m));
  return probes;
}

SetFunctionIntegrability integrability_fails(const SetFunction& nu, MeasurableSet e, std::string note) {
  SetFunctionIntegrability r;
  r.verdict = Verdict::Fails;
  r.integral = rl_value(GroundFunction::indicator(nu.space(), e), nu);
  r.value = nu(e);
  r.witness = std::move(e);
  r.note = std::move(note);
  return r;
}

SetFunctionIntegrability integrability_holds(std::string note) {
  SetFunctionIntegrability r;
  r.verdict = Verdict::Holds;
  r.note = std::move(note);
  return r;
}

}  // namespace

SetFunctionIntegrability is_rl_integrable_setfunction(const SetFunction& nu) {
  if (nu.space().is_finite()) {
    // On an atomic space the integral of chi_E is the sum of nu over the singletons of E.
    const int n = nu.space().size();
    const std::vector<double> v = tabulate_values(nu);
    const double tol = value_tolerance(nu);
    const Mask full = nu.space().full_mask();
    for (Mask e = 1;; ++e) {
      double s = 0.0;
      for (int i : mask_elements(e)) s += v[Mask{1} << i];
      if (std::abs(s - v[e]) > tol) return integrability_fails(nu, e, "nu(E) differs from the sum over its points");
      if (e == full) break;
    }
    (void)n;
    return integrability_holds("nu is additive over singletons");
  }
  switch (nu.kind()) {
    case SetFunction::Kind::AdditiveWeights:
      return integrability_holds("countably additive");
    case SetFunction::Kind::CardinalityRule: {
      const double a = nu.finite_value();
      const double b = nu.infinite_value();
      if (a == 0.0 && b == 0.0) return integrability_holds("identically zero");
      if (a > 0.0) return integrability_fails(nu, EpSet::of({0, 1}), "two points sum to 2a but nu({0,1}) = a");
      return integrability_fails(nu, EpSet::all(), "singletons are null but nu(nat) = b > 0");
    }
    case SetFunction::Kind::Scaled:
      if (nu.alpha() == 0.0) return integrability_holds("identically zero");
      {
        SetFunctionIntegrability r = is_rl_integrable_setfunction(nu.inner());
        if (r.witness) {
          r.integral *= nu.alpha();
          r.value *= nu.alpha();
        }
        return r;
      }
    default:
      break;
  }
  for (const auto& e : nat_probes()) {
    const double integral = rl_value(GroundFunction::indicator(nu.space(), e), nu);
    const double value = nu(e);
    if (std::abs(integral - value) > 1e-12 * std::max(1.0, std::abs(value))) {
      return integrability_fails(nu, e, "probe set separates the integral from nu");
    }
  }
  SetFunctionIntegrability r;
  r.note = "no probe set separates the integral of chi_E from nu(E)";
  return r;
}

// ---------------------------------------------------------------------------
// Inequalities

const char* to_string(InequalityKind k) {
  switch (k) {
    case InequalityKind::Holder:
      return "holder";
    case InequalityKind::Minkowski:
      return "minkowski";
    case InequalityKind::ReverseHolder:
      return "reverse_holder";
    case InequalityKind::ReverseMinkowski:
      return "reverse_minkowski";
  }
  return "holder";
}

InequalityKind parse_inequality_kind(const std::string& s) {
  for (auto k : {InequalityKind::Holder, InequalityKind::Minkowski, InequalityKind::ReverseHolder,
                 InequalityKind::ReverseMinkowski}) {
    if (s == to_string(k)) return k;
  }
  throw InvalidArgument("unknown inequality kind '" + s + "'");
}

namespace {

Verdict integrable_verdict(const GroundFunction& f, const SetFunction& nu) {
  try {
    return rl_integrate(f, nu).integrable() ? Verdict::Holds : Verdict::Fails;
  } catch (const Unsupported&) {
    return Verdict::NotDecidable;
  }
}

NamedHypothesis hyp(std::string name, Verdict v, std::string note = {}) {
  return {std::move(name), v, std::move(note)};
}

Verdict from_bool(bool b) { return b ? Verdict::Holds : Verdict::Fails; }

}  // namespace

InequalityReport check_inequality(InequalityKind kind, const GroundFunction& g, const GroundFunction& h,
                                  const SetFunction& nu, double p, std::optional<double> q, double tolerance) {
  if (!(std::isfinite(p) && p > 0.0)) throw InvalidArgument("inequality exponent p must be positive");
  const bool reverse = kind == InequalityKind::ReverseHolder || kind == InequalityKind::ReverseMinkowski;
  const bool holder = kind == InequalityKind::Holder || kind == InequalityKind::ReverseHolder;
  if (holder && p == 1.0) throw InvalidArgument("Hoelder inequalities need p != 1");

  InequalityReport r;
  r.kind = kind;
  r.p = p;
  r.q = p == 1.0 ? std::numeric_limits<double>::infinity() : p / (p - 1.0);
  if (q) {
    if (std::abs(1.0 / p + 1.0 / *q - 1.0) > 1e-12) {
      throw ConjugateMismatch("1/p + 1/q = " + std::to_string(1.0 / p + 1.0 / *q) + " for p = " + std::to_string(p) +
                              ", q = " + std::to_string(*q));
    }
    r.q = *q;
  }

  const SetFunctionIntegrability integ = is_rl_integrable_setfunction(nu);
  r.hypotheses.push_back(hyp("nu_rl_integrable", integ.verdict, integ.note));
  const PropertyReport props = classify(nu);
  r.hypotheses.push_back(hyp("countably_subadditive", props.sigma_subadditive.verdict));
  r.hypotheses.push_back(hyp("p_q_conjugate", Verdict::Holds,
                             reverse ? "q = p / (p - 1) is negative for 0 < p < 1" : "q = p / (p - 1)"));
  switch (kind) {
    case InequalityKind::Holder:
      r.hypotheses.push_back(hyp("p_range", from_bool(p > 1.0), "p > 1"));
      break;
    case InequalityKind::Minkowski:
      r.hypotheses.push_back(hyp("p_range", from_bool(p >= 1.0), "p >= 1"));
      break;
    case InequalityKind::ReverseHolder:
    case InequalityKind::ReverseMinkowski:
      r.hypotheses.push_back(hyp("p_range", from_bool(p < 1.0), "0 < p < 1"));
      break;
  }

  const double tol = tolerance;
  if (holder) {
    const GroundFunction gh = fn_product(g, h);
    r.hypotheses.push_back(hyp("gh_integrable", integrable_verdict(gh, nu)));
    if (kind == InequalityKind::ReverseHolder) {
      if (extrema_of(fn_abs_pow(h, 1.0), full_set(h.space())).inf <= 0.0) {
        throw HypothesisViolated("h_strictly_positive", "|h|^q with negative q needs h bounded away from zero");
      }
      const double hq = rl_value(fn_abs_pow(h, r.q), nu);
      r.hypotheses.push_back(hyp("integral_h_q_positive", from_bool(hq > 0.0)));
    }
    r.lhs = seminorm_p(gh, nu, 1.0);
    r.rhs = seminorm_p(g, nu, p) * seminorm_p(h, nu, r.q);
  } else {
    const GroundFunction sum = kind == InequalityKind::Minkowski
                                   ? fn_sum(g, h)
                                   : fn_sum(fn_abs_pow(g, 1.0), fn_abs_pow(h, 1.0));
    // Listed among the theorem's hypotheses; its integrability is recorded but not used.
    if (std::isfinite(r.q)) {
      r.hypotheses.push_back(hyp("g_plus_h_pow_q_p_minus_1_integrable",
                                 integrable_verdict(fn_abs_pow(sum, r.q * (p - 1.0)), nu)));
    }
    r.lhs = seminorm_p(sum, nu, p);
    r.rhs = seminorm_p(g, nu, p) + seminorm_p(h, nu, p);
  }
  const double slack = tol * std::max(1.0, std::abs(r.rhs));
  r.holds = reverse ? r.lhs >= r.rhs - slack : r.lhs <= r.rhs + slack;
  r.applicable = std::all_of(r.hypotheses.begin(), r.hypotheses.end(),
                             [](const NamedHypothesis& x) { return x.verdict == Verdict::Holds; });
  return r;
}

// ---------------------------------------------------------------------------
// Convergence

const char* to_string(ConvergenceMode m) {
  switch (m) {
    case ConvergenceMode::Uniform:
      return "uniform";
    case ConvergenceMode::InMeasure:
      return "in_measure";
    case ConvergenceMode::AlmostEverywhere:
      return "ae";
    case ConvergenceMode::PNorm:
      return "p_norm";
    case ConvergenceMode::Fatou:
      return "fatou";
    case ConvergenceMode::Monotone:
      return "monotone";
    case ConvergenceMode::SetwiseVarying:
      return "setwise_varying";
    case ConvergenceMode::Atom:
      return "atom";
  }
  return "uniform";
}

ConvergenceMode parse_convergence_mode(const std::string& s) {
  for (auto m : {ConvergenceMode::Uniform, ConvergenceMode::InMeasure, ConvergenceMode::AlmostEverywhere,
                 ConvergenceMode::PNorm, ConvergenceMode::Fatou, ConvergenceMode::Monotone,
                 ConvergenceMode::SetwiseVarying, ConvergenceMode::Atom}) {
    if (s == to_string(m)) return m;
  }
  throw InvalidArgument("unknown convergence mode '" + s + "'");
}

GroundFunction GeometricFamily::term(std::size_t n) const {
  GroundFunction f = fn_linear(1.0, base, std::pow(ratio, static_cast<double>(n)), delta);
  if (spike != 0.0 && spike_set) f = fn_sum(f, fn_scale(GroundFunction::indicator(base.space(), *spike_set), spike));
  return f;
}

const GroundFunction& EventuallyPeriodicFamily::term(std::size_t n) const {
  if (n == 0) throw InvalidArgument("sequence terms are indexed from 1");
  if (n <= head.size()) return head[n - 1];
  if (cycle.empty()) throw InvalidArgument("eventually periodic sequence needs a nonempty cycle");
  return cycle[(n - 1 - head.size()) % cycle.size()];
}

IvFunction IvGeometricFamily::term(std::size_t n) const {
  const double w = std::pow(ratio, static_cast<double>(n));
  return IvFunction(fn_linear(1.0, base.h1(), w, delta1), fn_linear(1.0, base.h2(), w, delta2));
}

bool limit_verdict(const std::vector<double>& d, double tol) {
  if (d.empty() || !(d.back() <= tol)) return false;
  const std::size_t from = d.size() >= 5 ? d.size() - 5 : 0;
  for (std::size_t i = from + 1; i < d.size(); ++i) {
    if (d[i] > d[i - 1] + 1e-15) return false;
  }
  return true;
}

namespace {

void finish(ConvergenceReport& r) {
  r.exploratory = std::any_of(r.hypotheses.begin(), r.hypotheses.end(),
                              [](const NamedHypothesis& h) { return h.verdict != Verdict::Holds; });
}

NamedHypothesis condition_e(const GroundSpace& s) {
  if (s.is_finite()) return hyp("condition_E", Verdict::Holds, "finite-space stabilization");
  return hyp("condition_E", Verdict::NotDecidable, "no decision procedure on nat");
}

NamedHypothesis finite_variation(const SetFunction& nu) {
  try {
    const double v = variation(nu, full_set(nu.space()));
    return hyp("finite_variation", from_bool(std::isfinite(v)), "variation(S) = " + std::to_string(v));
  } catch (const Unsupported& e) {
    return hyp("finite_variation", Verdict::NotDecidable, e.what());
  }
}

void require_finite(const GroundSpace& s, ConvergenceMode m) {
  if (!s.is_finite()) throw Unsupported(std::string("convergence mode ") + to_string(m) + " needs a finite space");
}

// Mask of points where |f(s)| >= eps.
Mask deviation_set(const GroundFunction& f, double eps) {
  Mask m = 0;
  for (int i = 0; i < f.space().size(); ++i)
    if (std::abs(f.at(i)) >= eps) m |= Mask{1} << i;
  return m;
}

}  // namespace

ConvergenceReport run_convergence(ConvergenceMode mode, const ScalarConvergenceInput& in,
                                  const ConvergenceOptions& opts) {
  ConvergenceReport r;
  r.mode = mode;
  r.n_terms = opts.n_terms;
  r.tolerance = opts.tolerance;
  const SetFunction& nu = in.nu;
  const std::size_t N = opts.n_terms;
  if (N == 0) throw InvalidArgument("convergence needs at least one term");

  if (mode == ConvergenceMode::Fatou) {
    if (!in.periodic) throw InvalidArgument("Fatou mode needs an eventually periodic sequence");
    require_finite(nu.space(), mode);
    const auto& fam = *in.periodic;
    const PropertyReport props = classify(nu);
    r.hypotheses.push_back(hyp("monotone", props.monotone.verdict));
    r.hypotheses.push_back(finite_variation(nu));
    r.hypotheses.push_back(condition_e(nu.space()));
    r.hypotheses.push_back(hyp("uniformly_bounded", Verdict::Holds, "finitely many distinct terms"));
    for (std::size_t n = 1; n <= N; ++n) r.distances.push_back(rl_value(fam.term(n), nu));
    // Past the head both liminfs are minima over the cycle.
    GroundFunction low = fam.cycle.front();
    double liminf_int = rl_value(fam.cycle.front(), nu);
    for (const auto& c : fam.cycle) {
      low = fn_min(low, c);
      liminf_int = std::min(liminf_int, rl_value(c, nu));
    }
    const double lhs = rl_value(low, nu);
    r.scalar_sides = {lhs, liminf_int};
    r.verdict = lhs <= liminf_int + 1e-12 * std::max(1.0, std::abs(liminf_int));
    r.note = "integral of liminf f_n <= liminf of integrals";
    finish(r);
    return r;
  }

  if (!in.geometric) throw InvalidArgument(std::string("mode ") + to_string(mode) + " needs a geometric family");
  const GeometricFamily& fam = *in.geometric;
  const GroundFunction& f = fam.base;
  const bool spiked = fam.spike != 0.0 && fam.spike_set && !is_empty(*fam.spike_set);

  switch (mode) {
    case ConvergenceMode::Uniform:
      if (spiked) throw HypothesisViolated("uniform_convergence", "the spike on " + set_to_string(*fam.spike_set) + " does not decay");
      r.hypotheses.push_back(hyp("uniform_convergence", Verdict::Holds, "sup |f_n - f| = ratio^n sup |delta|"));
      break;
    case ConvergenceMode::InMeasure:
      require_finite(nu.space(), mode);
      r.hypotheses.push_back(hyp("uniformly_bounded", Verdict::Holds, "geometric family"));
      break;
    case ConvergenceMode::AlmostEverywhere: {
      require_finite(nu.space(), mode);
      const PropertyReport props = classify(nu);
      r.hypotheses.push_back(hyp("monotone", props.monotone.verdict));
      r.hypotheses.push_back(condition_e(nu.space()));
      r.hypotheses.push_back(hyp("uniformly_bounded", Verdict::Holds, "geometric family"));
      if (spiked && semivariation(nu, *fam.spike_set) > value_tolerance(nu)) {
        throw HypothesisViolated("ae_convergence", "spike set " + set_to_string(*fam.spike_set) + " is not null");
      }
      break;
    }
    case ConvergenceMode::PNorm: {
      const PropertyReport props = classify(nu);
      r.hypotheses.push_back(hyp("countably_subadditive", props.sigma_subadditive.verdict));
      if (spiked) throw HypothesisViolated("p_norm_convergence", "the spike does not decay");
      break;
    }
    default:
      throw InvalidArgument(std::string("mode ") + to_string(mode) + " is not a scalar mode");
  }

  const double limit = rl_value(f, nu);
  for (std::size_t n = 1; n <= N; ++n) {
    const GroundFunction fn = fam.term(n);
    const GroundFunction diff = fn_linear(1.0, fn, -1.0, f);
    if (mode == ConvergenceMode::PNorm) {
      r.distances.push_back(seminorm_p(diff, nu, in.p));
    } else {
      r.distances.push_back(std::abs(rl_value(fn, nu) - limit));
    }
    if (nu.space().is_finite() && (mode == ConvergenceMode::InMeasure || mode == ConvergenceMode::PNorm)) {
      r.auxiliary.push_back(semivariation(nu, deviation_set(diff, in.epsilon)));
    }
  }
  if (mode == ConvergenceMode::InMeasure && r.auxiliary.back() > value_tolerance(nu)) {
    throw HypothesisViolated("converges_in_measure",
                             "deviation set at n = N has semivariation " + std::to_string(r.auxiliary.back()));
  }
  r.verdict = limit_verdict(r.distances, opts.tolerance);
  finish(r);
  return r;
}

ConvergenceReport run_convergence(ConvergenceMode mode, const IvConvergenceInput& in, const ConvergenceOptions& opts) {
  ConvergenceReport r;
  r.mode = mode;
  r.interval = true;
  r.n_terms = opts.n_terms;
  r.tolerance = opts.tolerance;
  const IvSetFunction& gamma = in.gamma;
  const std::size_t N = opts.n_terms;
  if (N == 0) throw InvalidArgument("convergence needs at least one term");
  require_finite(gamma.space(), mode);

  const PropertyReport p1 = classify(gamma.nu1());
  const PropertyReport p2 = classify(gamma.nu2());
  const Verdict gamma_monotone = from_bool(p1.monotone.holds() && p2.monotone.holds());

  switch (mode) {
    case ConvergenceMode::Uniform:
    case ConvergenceMode::InMeasure:
    case ConvergenceMode::AlmostEverywhere: {
      if (!in.geometric) throw InvalidArgument("interval limit modes need a geometric family");
      if (mode == ConvergenceMode::Uniform) {
        r.hypotheses.push_back(hyp("uniform_convergence", Verdict::Holds, "d_H(H_n, H) = ratio^n sup |delta|"));
      } else {
        r.hypotheses.push_back(hyp("uniformly_bounded", Verdict::Holds, "geometric family"));
      }
      if (mode == ConvergenceMode::AlmostEverywhere) {
        r.hypotheses.push_back(hyp("monotone", gamma_monotone));
        r.hypotheses.push_back(condition_e(gamma.space()));
      }
      const Interval limit = iv_rl_value(in.geometric->base, gamma);
      for (std::size_t n = 1; n <= N; ++n) {
        const IvFunction hn = in.geometric->term(n);
        r.distances.push_back(hausdorff(iv_rl_value(hn, gamma), limit));
        if (mode == ConvergenceMode::InMeasure) {
          const GroundFunction d1 = fn_linear(1.0, hn.h1(), -1.0, in.geometric->base.h1());
          const GroundFunction d2 = fn_linear(1.0, hn.h2(), -1.0, in.geometric->base.h2());
          const Mask dev = deviation_set(d1, in.epsilon) | deviation_set(d2, in.epsilon);
          r.auxiliary.push_back(semivariation(gamma.nu2(), dev));
        }
      }
      r.verdict = limit_verdict(r.distances, opts.tolerance);
      break;
    }
    case ConvergenceMode::Fatou: {
      if (in.terms.empty()) throw InvalidArgument("interval Fatou mode needs a cycle of terms");
      r.hypotheses.push_back(hyp("monotone", gamma_monotone));
      r.hypotheses.push_back(finite_variation(gamma.nu2()));
      r.hypotheses.push_back(condition_e(gamma.space()));
      IvFunction low = in.terms.front();
      Interval first = iv_rl_value(in.terms.front(), gamma);
      double lo = first.lo();
      double hi = first.hi();
      for (const auto& t : in.terms) {
        low = iv_meet(low, t);
        const Interval v = iv_rl_value(t, gamma);
        lo = std::min(lo, v.lo());
        hi = std::min(hi, v.hi());
      }
      for (std::size_t n = 1; n <= N; ++n) {
        r.distances.push_back(iv_norm(iv_rl_value(in.terms[(n - 1) % in.terms.size()], gamma)));
      }
      const Interval lhs = iv_rl_value(low, gamma);
      const Interval rhs(lo, hi);
      r.interval_sides = {lhs, rhs};
      r.verdict = lhs.lo() <= rhs.lo() + 1e-12 * std::max(1.0, rhs.lo()) &&
                  lhs.hi() <= rhs.hi() + 1e-12 * std::max(1.0, rhs.hi());
      r.note = "integral of liminf H_n <= liminf of integrals (weak interval order)";
      break;
    }
    case ConvergenceMode::Monotone: {
      if (in.terms.empty()) throw InvalidArgument("monotone mode needs an increasing list of terms");
      for (std::size_t i = 1; i < in.terms.size(); ++i) {
        if (!iv_leq(in.terms[i - 1], in.terms[i])) {
          throw HypothesisViolated("increasing_sequence", "H_" + std::to_string(i) + " is not below H_" + std::to_string(i + 1));
        }
      }
      r.hypotheses.push_back(hyp("increasing_sequence", Verdict::Holds));
      r.hypotheses.push_back(hyp("uniformly_bounded", Verdict::Holds, "finitely many distinct terms"));
      IvFunction top = in.terms.front();
      double lo = 0.0;
      double hi = 0.0;
      for (const auto& t : in.terms) {
        top = iv_join(top, t);
        const Interval v = iv_rl_value(t, gamma);
        lo = std::max(lo, v.lo());
        hi = std::max(hi, v.hi());
      }
      const Interval lhs = iv_rl_value(top, gamma);
      const Interval rhs(lo, hi);
      for (std::size_t n = 1; n <= N; ++n) {
        const IvFunction& t = in.terms[std::min(n, in.terms.size()) - 1];
        r.distances.push_back(hausdorff(iv_rl_value(t, gamma), lhs));
      }
      r.interval_sides = {lhs, rhs};
      r.verdict = lhs == rhs;
      r.note = "integral of the supremum equals the supremum of the integrals";
      break;
    }
    case ConvergenceMode::SetwiseVarying: {
      if (!in.geometric) throw InvalidArgument("setwise_varying mode needs a geometric family");
      const double ratio = in.geometric->ratio;
      r.hypotheses.push_back(hyp("multisubmeasure", from_bool(is_multisubmeasure(gamma))));
      r.hypotheses.push_back(hyp("increasing_chain", Verdict::Holds, "Gamma_n = (1 - ratio^n) Gamma"));
      const Interval limit = iv_rl_value(in.geometric->base, gamma);
      const MeasurableSet all = full_set(gamma.space());
      for (std::size_t n = 1; n <= N; ++n) {
        const IvSetFunction gn = iv_scale(gamma, 1.0 - std::pow(ratio, static_cast<double>(n)));
        r.auxiliary.push_back(std::max(variation_distance(gn.nu1(), gamma.nu1(), all),
                                       variation_distance(gn.nu2(), gamma.nu2(), all)));
        r.distances.push_back(hausdorff(iv_rl_value(in.geometric->term(n), gn), limit));
      }
      r.hypotheses.push_back(hyp("setwise_convergence", from_bool(r.auxiliary.back() <= opts.tolerance),
                                 "variation distance to Gamma at n = N"));
      r.verdict = limit_verdict(r.distances, opts.tolerance);
      break;
    }
    case ConvergenceMode::Atom: {
      if (!in.geometric || !in.atom) throw InvalidArgument("atom mode needs a geometric family and an atom");
      r.hypotheses.push_back(hyp("property_sigma", from_bool(p1.property_sigma.holds() && p2.property_sigma.holds())));
      r.hypotheses.push_back(finite_variation(gamma.nu2()));
      r.hypotheses.push_back(hyp("regular", Verdict::Holds, "discrete finite space"));
      std::vector<IvFunction> seq;
      for (std::size_t n = 1; n <= N; ++n) seq.push_back(in.geometric->term(n));
      bool all_hold = true;
      for (const auto& s : atom_convergence(seq, in.geometric->base, gamma, *in.atom)) {
        r.distances.push_back(s.distance);
        r.bounds.push_back(s.bound);
        all_hold = all_hold && s.holds;
      }
      r.verdict = all_hold && limit_verdict(r.distances, opts.tolerance);
      r.note = "d_H of atom integrals bounded by d_H(H_n(b), H(b)) * variation(nu2, B)";
      break;
    }
    case ConvergenceMode::PNorm:
      throw InvalidArgument("p_norm mode is scalar only");
  }
  finish(r);
  return r;
}

}  // namespace nonadd
