#include "nonadd/iv_integral.hpp"

#include <algorithm>
#include <cmath>

#include "nonadd/error.hpp"

namespace nonadd {

namespace {

constexpr double kRelTol = 1e-12;

double tol_for(double a, double b) { return kRelTol * std::max({1.0, std::abs(a), std::abs(b)}); }

std::vector<MeasurableSet> nat_probes() {
  std::vector<MeasurableSet> probes;
  for (std::uint64_t k = 0; k < 8; ++k) probes.emplace_back(EpSet::of({k}));
  for (std::uint64_t k = 0; k < 4; ++k) probes.emplace_back(EpSet::tail_from(k));
  for (std::uint64_t m = 2; m <= 3; ++m)
    for (std::uint64_t r = 0; r < m; ++r) probes.emplace_back(EpSet::residue_class(r, m));
  probes.emplace_back(EpSet::of({0, 1, 2}));
  return probes;
}

void require_finite(const GroundSpace& s, const char* op) {
  if (!s.is_finite()) throw Unsupported(std::string(op) + " needs a finite space");
}

}  // namespace

// ---------------------------------------------------------------------------
// IvSetFunction

IvSetFunction::IvSetFunction(SetFunction nu1, SetFunction nu2) : nu1_(std::move(nu1)), nu2_(std::move(nu2)) {
  if (!(nu1_.space() == nu2_.space())) throw SpaceMismatch("Gamma endpoints live on different spaces");
  auto check = [&](const MeasurableSet& a) {
    const double x = nu1_(a);
    const double y = nu2_(a);
    if (x > y + tol_for(x, y)) {
      throw InvalidArgument("Gamma needs nu1 <= nu2; at " + set_to_string(a) + " nu1 = " + std::to_string(x) +
                            " > nu2 = " + std::to_string(y));
    }
  };
  if (space().is_finite()) {
    const Mask full = space().full_mask();
    for (Mask m = 0;; ++m) {
      check(m);
      if (m == full) break;
    }
  } else {
    for (const auto& p : nat_probes()) check(p);
  }
}

Interval IvSetFunction::operator()(const MeasurableSet& a) const {
  const double x = nu1_(a);
  const double y = nu2_(a);
  // Absorb rounding differences between the endpoint representations.
  return Interval(x, std::max(x, y));
}

IvSetFunction iv_sum(const IvSetFunction& a, const IvSetFunction& b) {
  return IvSetFunction(SetFunction::sum({a.nu1(), b.nu1()}), SetFunction::sum({a.nu2(), b.nu2()}));
}

IvSetFunction iv_scale(const IvSetFunction& a, double alpha) {
  return IvSetFunction(SetFunction::scaled(alpha, a.nu1()), SetFunction::scaled(alpha, a.nu2()));
}

bool is_multisubmeasure(const IvSetFunction& gamma) {
  return classify(gamma.nu1()).is_submeasure() && classify(gamma.nu2()).is_submeasure();
}

// ---------------------------------------------------------------------------
// IvFunction

IvFunction::IvFunction(GroundFunction h1, GroundFunction h2) : h1_(std::move(h1)), h2_(std::move(h2)) {
  if (!(h1_.space() == h2_.space())) throw SpaceMismatch("H endpoints live on different spaces");
  const MeasurableSet all = full_set(space());
  if (extrema_of(h1_, all).inf < 0.0) throw InvalidArgument("H needs h1 >= 0");
  if (extrema_of(fn_linear(1.0, h2_, -1.0, h1_), all).inf < 0.0) throw InvalidArgument("H needs h1 <= h2");
}

IvFunction iv_sum(const IvFunction& a, const IvFunction& b) {
  return IvFunction(fn_sum(a.h1(), b.h1()), fn_sum(a.h2(), b.h2()));
}

IvFunction iv_scale(const IvFunction& a, double alpha) {
  if (!(alpha >= 0.0)) throw InvalidArgument("interval function scale must be nonnegative");
  return IvFunction(fn_scale(a.h1(), alpha), fn_scale(a.h2(), alpha));
}

IvFunction iv_meet(const IvFunction& a, const IvFunction& b) {
  return IvFunction(fn_min(a.h1(), b.h1()), fn_min(a.h2(), b.h2()));
}

IvFunction iv_join(const IvFunction& a, const IvFunction& b) {
  return IvFunction(fn_max(a.h1(), b.h1()), fn_max(a.h2(), b.h2()));
}

bool iv_leq(const IvFunction& a, const IvFunction& b) {
  const MeasurableSet all = full_set(a.space());
  return extrema_of(fn_linear(1.0, b.h1(), -1.0, a.h1()), all).inf >= 0.0 &&
         extrema_of(fn_linear(1.0, b.h2(), -1.0, a.h2()), all).inf >= 0.0;
}

bool iv_subset(const IvFunction& a, const IvFunction& b) {
  const MeasurableSet all = full_set(a.space());
  return extrema_of(fn_linear(1.0, a.h1(), -1.0, b.h1()), all).inf >= 0.0 &&
         extrema_of(fn_linear(1.0, b.h2(), -1.0, a.h2()), all).inf >= 0.0;
}

double sup_hausdorff(const IvFunction& g, const IvFunction& h) {
  const MeasurableSet all = full_set(g.space());
  const GroundFunction d1 = fn_abs_pow(fn_linear(1.0, g.h1(), -1.0, h.h1()), 1.0);
  const GroundFunction d2 = fn_abs_pow(fn_linear(1.0, g.h2(), -1.0, h.h2()), 1.0);
  return std::max(extrema_of(d1, all).sup, extrema_of(d2, all).sup);
}

// ---------------------------------------------------------------------------
// Integrals

Interval minkowski_sum(const IvFunction& h, const IvSetFunction& gamma, const TaggedPartition& p) {
  Interval acc;
  const auto& blocks = p.partition().blocks();
  for (std::size_t i = 0; i < blocks.size(); ++i) acc = acc + iv_mul(h.at(p.tags()[i]), gamma(blocks[i]));
  if (p.partition().singleton_tail() && !is_empty(p.partition().tail_set())) {
    throw Unsupported("direct Minkowski evaluation of a singleton tail");
  }
  return acc;
}

IvIntegralReport iv_rl_integrate(const IvFunction& h, const IvSetFunction& gamma, const MeasurableSet& e) {
  IvIntegralReport r;
  auto endpoint = [&](const GroundFunction& f, const SetFunction& nu, const char* label) {
    try {
      IntegralReport rep = rl_integrate(f, nu, e);
      if (!rep.integrable()) throw SeriesDiverges(std::string(label) + " endpoint: " + rep.note);
      return rep;
    } catch (const SeriesDiverges&) {
      throw;
    } catch (const Error& err) {
      throw Error(std::string(label) + " endpoint: " + err.what());
    }
  };
  r.lower = endpoint(h.h1(), gamma.nu1(), "lower");
  r.upper = endpoint(h.h2(), gamma.nu2(), "upper");
  r.value = Interval(r.lower.value, std::max(r.lower.value, r.upper.value));
  if (gamma.space().is_finite()) {
    // Minkowski sum of H(s) * Gamma({s}) over the singletons of E.
    Interval direct;
    for (int i : mask_elements(std::get<Mask>(e))) direct = direct + iv_mul(h.at(i), gamma(Mask{1} << i));
    r.minkowski_gap = hausdorff(direct, r.value);
    if (*r.minkowski_gap > 1e-12 * std::max(1.0, iv_norm(r.value))) {
      throw Error("endpoint decomposition disagrees with the direct Minkowski sum: " + direct.to_string() +
                  " vs " + r.value.to_string());
    }
  }
  return r;
}

Interval iv_rl_value(const IvFunction& h, const IvSetFunction& gamma, const MeasurableSet& e) {
  const double lo = rl_value(h.h1(), gamma.nu1(), e);
  const double hi = rl_value(h.h2(), gamma.nu2(), e);
  return Interval(lo, std::max(lo, hi));
}

Interval iv_rl_value(const IvFunction& h, const IvSetFunction& gamma) {
  return iv_rl_value(h, gamma, full_set(gamma.space()));
}

IvIndefiniteReport iv_indefinite(const IvFunction& h, const IvSetFunction& gamma) {
  require_finite(gamma.space(), "iv_indefinite");
  const int n = gamma.space().size();
  if (n > kMaxExhaustiveSize) throw Unsupported("iv_indefinite limited to " + std::to_string(kMaxExhaustiveSize) + " points");
  const Mask full = gamma.space().full_mask();
  IvIndefiniteReport r;
  r.values.resize(std::size_t{1} << n);
  for (Mask m = 0;; ++m) {
    r.values[m] = iv_rl_value(h, gamma, m);
    if (m == full) break;
  }
  for (Mask u = 1; u <= full; ++u) {
    for (Mask a = (u - 1) & u; a != 0; a = (a - 1) & u) {
      const Mask b = u ^ a;
      if (a < b) continue;
      r.max_additivity_gap = std::max(r.max_additivity_gap, hausdorff(r.values[u], r.values[a] + r.values[b]));
    }
    if (u == full) break;
  }
  r.finitely_additive = r.max_additivity_gap <= 1e-12 * std::max(1.0, iv_norm(r.values[full]));
  r.norm_s = iv_norm(r.values[full]);
  r.norm_expected = rl_value(h.h2(), gamma.nu2());
  r.variation_s = max_disjoint_family_sum(full, [&](Mask m) { return iv_norm(r.values[m]); });

  const PropertyReport p1 = classify(gamma.nu1());
  const PropertyReport p2 = classify(gamma.nu2());
  r.gamma_monotone = p1.monotone.holds() && p2.monotone.holds();
  if (r.gamma_monotone) {
    bool mono = true;
    for (Mask a = 0; a <= full && mono; ++a) {
      for (int i = 0; i < n; ++i) {
        const Mask b = a | (Mask{1} << i);
        const Interval& x = r.values[a];
        const Interval& y = r.values[b];
        if (x.lo() > y.lo() + tol_for(x.lo(), y.lo()) || x.hi() > y.hi() + tol_for(x.hi(), y.hi())) {
          mono = false;
          break;
        }
      }
      if (a == full) break;
    }
    r.monotone = mono;
  }
  r.gamma_dh_multimeasure = p1.sigma_additive.holds() && p2.sigma_additive.holds();
  // A finitely additive operator on a finite algebra is countably additive.
  r.countably_additive = r.finitely_additive;
  return r;
}

// ---------------------------------------------------------------------------
// Monotonicity suite

std::size_t IvSuiteReport::violations() const {
  std::size_t v = 0;
  for (const auto& c : checks) v += c.violations;
  return v;
}

namespace {

struct Tally {
  explicit Tally(std::string name, bool applicable = true) {
    check.name = std::move(name);
    check.applicable = applicable;
  }

  RelationCheck check;

  // Records lhs <= rhs (up to tolerance) for subset e.
  void leq(double lhs, double rhs, Mask e) {
    ++check.cases;
    const double excess = lhs - rhs;
    if (excess > tol_for(lhs, rhs)) {
      ++check.violations;
      if (!check.witness) check.witness = e;
    }
    check.worst_excess = std::max(check.worst_excess, excess);
  }
  void iv_leq(const Interval& a, const Interval& b, Mask e) {
    leq(a.lo(), b.lo(), e);
    leq(a.hi(), b.hi(), e);
  }
  void iv_subset(const Interval& a, const Interval& b, Mask e) {
    leq(b.lo(), a.lo(), e);
    leq(a.hi(), b.hi(), e);
  }
  void iv_equal(const Interval& a, const Interval& b, Mask e) {
    iv_leq(a, b, e);
    iv_leq(b, a, e);
  }
};

bool gamma_leq(const IvSetFunction& a, const IvSetFunction& b) {
  const Mask full = a.space().full_mask();
  for (Mask m = 0;; ++m) {
    if (!iv_leq(a(m), b(m))) return false;
    if (m == full) return true;
  }
}

bool gamma_subset(const IvSetFunction& a, const IvSetFunction& b) {
  const Mask full = a.space().full_mask();
  for (Mask m = 0;; ++m) {
    if (!iv_subset(a(m), b(m))) return false;
    if (m == full) return true;
  }
}

}  // namespace

IvSuiteReport iv_monotonicity_suite(const IvFunction& g, const IvFunction& h, const IvSetFunction& gamma,
                                    const IvSetFunction& gamma1, const IvSetFunction& gamma2, double alpha) {
  require_finite(gamma.space(), "iv_monotonicity_suite");
  const Mask full = gamma.space().full_mask();

  const IvFunction gh_meet = iv_meet(g, h);
  const IvFunction gh_join = iv_join(g, h);
  const IvFunction gh_sum = iv_sum(g, h);
  const IvFunction h_scaled = iv_scale(h, alpha);
  const IvSetFunction g12 = iv_sum(gamma1, gamma2);
  const IvSetFunction gamma_scaled = iv_scale(gamma, alpha);
  const double dist = sup_hausdorff(g, h);

  Tally order("order: G <= H implies T_G(E) <= T_H(E)", iv_leq(g, h));
  Tally inclusion("inclusion: G within H implies T_G(E) within T_H(E)", iv_subset(g, h));
  Tally meet("lattice: T_{G meet H}(E) <= T_G(E) meet T_H(E)");
  Tally join("lattice: T_G(E) join T_H(E) <= T_{G join H}(E)");
  Tally add_h("additivity in H: T_{G+H}(E) = T_G(E) + T_H(E)");
  Tally hom_h("homogeneity in H: T_{aH}(E) = a T_H(E)");
  Tally add_gamma("additivity in Gamma: integral over Gamma1+Gamma2 = sum of integrals");
  Tally hom_gamma("homogeneity in Gamma: integral over a Gamma = a times integral");
  Tally order_gamma("order in Gamma: Gamma1 <= Gamma2 implies integrals ordered", gamma_leq(gamma1, gamma2));
  Tally incl_gamma("inclusion in Gamma: Gamma1 within Gamma2 implies integrals nested", gamma_subset(gamma1, gamma2));
  Tally distance("distance: d_H(T_G(E), T_H(E)) <= sup d_H(G, H) * variation(nu2, E)");

  for (Mask e = 0;; ++e) {
    const Interval tg = iv_rl_value(g, gamma, e);
    const Interval th = iv_rl_value(h, gamma, e);
    if (order.check.applicable) order.iv_leq(tg, th, e);
    if (inclusion.check.applicable) inclusion.iv_subset(tg, th, e);
    meet.iv_leq(iv_rl_value(gh_meet, gamma, e), nonadd::iv_meet(tg, th), e);
    join.iv_leq(nonadd::iv_join(tg, th), iv_rl_value(gh_join, gamma, e), e);
    add_h.iv_equal(iv_rl_value(gh_sum, gamma, e), tg + th, e);
    hom_h.iv_equal(iv_rl_value(h_scaled, gamma, e), nonadd::iv_scale(th, alpha), e);
    const Interval t1 = iv_rl_value(h, gamma1, e);
    const Interval t2 = iv_rl_value(h, gamma2, e);
    add_gamma.iv_equal(iv_rl_value(h, g12, e), t1 + t2, e);
    hom_gamma.iv_equal(iv_rl_value(h, gamma_scaled, e), nonadd::iv_scale(th, alpha), e);
    if (order_gamma.check.applicable) order_gamma.iv_leq(t1, t2, e);
    if (incl_gamma.check.applicable) incl_gamma.iv_subset(t1, t2, e);
    distance.leq(hausdorff(tg, th), dist * variation(gamma.nu2(), e), e);
    if (e == full) break;
  }

  IvSuiteReport r;
  for (Tally* t : {&order, &inclusion, &meet, &join, &add_h, &hom_h, &add_gamma, &hom_gamma, &order_gamma,
                   &incl_gamma, &distance}) {
    r.checks.push_back(std::move(t->check));
  }
  r.variation_nu1 = variation(gamma.nu1(), full);
  r.variation_nu2 = variation(gamma.nu2(), full);
  return r;
}

// ---------------------------------------------------------------------------
// Atoms

AtomIntegral iv_atom_integral(const IvFunction& h, const IvSetFunction& gamma, Mask b) {
  require_finite(gamma.space(), "iv_atom_integral");
  check_in_algebra(gamma.space(), b);
  for (const auto* nu : {&gamma.nu1(), &gamma.nu2()}) {
    Mask split = 0;
    if (!is_atom(*nu, b, &split)) {
      const std::string which = nu == &gamma.nu1() ? "nu1" : "nu2";
      if ((*nu)(b) <= value_tolerance(*nu)) throw NotAnAtom(set_to_string(b) + " is null for " + which);
      throw NotAnAtom(set_to_string(b) + " is not an atom of " + which + "; witness subset " + set_to_string(split));
    }
  }
  std::vector<int> found;
  for (int s : mask_elements(b)) {
    const Mask single = Mask{1} << s;
    bool carries = true;
    for (const auto* nu : {&gamma.nu1(), &gamma.nu2()}) {
      const double tol = value_tolerance(*nu);
      if (std::abs((*nu)(single) - (*nu)(b)) > tol || (*nu)(b & ~single) > tol) carries = false;
    }
    if (carries) found.push_back(s);
  }
  if (found.size() != 1) {
    throw NoSinglePoint("atom " + set_to_string(b) + " has " + std::to_string(found.size()) +
                        " points carrying its mass; property (sigma) or monotonicity likely fails");
  }
  AtomIntegral r;
  r.point = static_cast<std::uint64_t>(found.front());
  r.value = iv_mul(h.at(r.point), gamma(Mask{1} << r.point));
  r.integral = iv_rl_value(h, gamma, b);
  r.matches_integral = r.value == r.integral;
  return r;
}

std::vector<AtomConvergenceStep> atom_convergence(const std::vector<IvFunction>& hn, const IvFunction& h,
                                                  const IvSetFunction& gamma, Mask b) {
  const AtomIntegral base = iv_atom_integral(h, gamma, b);
  const double var = variation(gamma.nu2(), b);
  std::vector<AtomConvergenceStep> steps;
  for (std::size_t n = 0; n < hn.size(); ++n) {
    AtomConvergenceStep s;
    s.n = n + 1;
    s.distance = hausdorff(iv_rl_value(hn[n], gamma, b), base.integral);
    s.bound = hausdorff(hn[n].at(base.point), h.at(base.point)) * var;
    s.holds = s.distance <= s.bound + tol_for(s.distance, s.bound);
    steps.push_back(s);
  }
  return steps;
}

}  // namespace nonadd
