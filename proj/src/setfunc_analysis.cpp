#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "nonadd/error.hpp"
#include "nonadd/setfunc.hpp"

namespace nonadd {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "Holds";
    case Verdict::Fails:
      return "Fails";
    case Verdict::NotDecidable:
      return "NotDecidable";
  }
  return "NotDecidable";
}

std::vector<std::pair<std::string, const PropertyFlag*>> PropertyReport::flags() const {
  return {{"monotone", &monotone},
          {"subadditive", &subadditive},
          {"sigma_subadditive", &sigma_subadditive},
          {"finitely_additive", &finitely_additive},
          {"sigma_additive", &sigma_additive},
          {"null_additive", &null_additive},
          {"property_sigma", &property_sigma},
          {"o_continuous", &o_continuous},
          {"exhaustive", &exhaustive},
          {"regular", &regular}};
}

namespace {

PropertyFlag holds(std::string rationale = {}) { return {Verdict::Holds, std::nullopt, std::move(rationale)}; }

PropertyFlag fails(std::vector<MeasurableSet> sets, std::string description) {
  return {Verdict::Fails, Witness{std::move(sets), std::move(description)}, {}};
}

PropertyFlag undecided(std::string rationale) { return {Verdict::NotDecidable, std::nullopt, std::move(rationale)}; }

// Spreads the bits of `compact` onto the set bits of `e` (software pdep).
Mask expand(Mask compact, Mask e) {
  Mask out = 0;
  while (compact != 0 && e != 0) {
    const Mask low = e & (~e + 1);
    if (compact & 1u) out |= low;
    compact >>= 1;
    e &= e - 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Finite spaces

PropertyReport classify_finite(const SetFunction& nu) {
  const int n = nu.space().size();
  const std::vector<double> v = tabulate_values(nu);
  const double tol = value_tolerance(nu);
  const Mask full = nu.space().full_mask();
  auto null = [&](Mask m) { return std::abs(v[m]) <= tol; };

  PropertyReport r;

  r.monotone = holds();
  for (Mask a = 0; a <= full && r.monotone.holds(); ++a) {
    for (int i = 0; i < n; ++i) {
      const Mask b = a | (Mask{1} << i);
      if (b != a && v[a] > v[b] + tol) {
        r.monotone = fails({a, b}, "A is a subset of B but nu(A) > nu(B)");
        break;
      }
    }
    if (a == full) break;
  }

  const std::string finite_note = "decreasing sequences in a finite algebra stabilize after finitely many steps";
  r.o_continuous = holds(finite_note);
  r.exhaustive = holds("a disjoint sequence of subsets of a finite space has only finitely many nonempty terms");
  r.regular = holds("every subset of a discrete finite space is both open and closed");

  if (n > kMaxExhaustiveSize) {
    const std::string why = "exhaustive pair scan limited to spaces with at most " +
                            std::to_string(kMaxExhaustiveSize) + " points";
    r.subadditive = r.sigma_subadditive = r.finitely_additive = r.sigma_additive = undecided(why);
    r.null_additive = r.property_sigma = undecided(why);
    return r;
  }

  // Unordered disjoint pairs (A, B), A holding the lowest point of A u B.
  r.subadditive = holds();
  r.finitely_additive = holds();
  for (Mask u = 1; u <= full; ++u) {
    const Mask low = u & (~u + 1);
    const Mask rest = u ^ low;
    for (Mask s = rest;; s = (s - 1) & rest) {
      const Mask a = s | low;
      const Mask b = u ^ a;
      if (b != 0) {
        if (r.subadditive.holds() && v[u] > v[a] + v[b] + tol) {
          r.subadditive = fails({a, b}, "A and B are disjoint but nu(A u B) > nu(A) + nu(B)");
        }
        if (r.finitely_additive.holds() && std::abs(v[u] - v[a] - v[b]) > tol) {
          r.finitely_additive = fails({a, b}, "A and B are disjoint but nu(A u B) != nu(A) + nu(B)");
        }
      }
      if (s == 0) break;
    }
    if (u == full) break;
  }
  const std::string sigma_note = "a countable partition of a finite set has finitely many nonempty blocks";
  r.sigma_subadditive = r.subadditive;
  r.sigma_subadditive.rationale = sigma_note;
  r.sigma_additive = r.finitely_additive;
  r.sigma_additive.rationale = sigma_note;

  std::vector<Mask> nulls;
  for (Mask m = 0; m <= full; ++m) {
    if (null(m)) nulls.push_back(m);
    if (m == full) break;
  }

  r.null_additive = holds();
  for (Mask b : nulls) {
    if (b == 0) continue;
    for (Mask a = 0; a <= full; ++a) {
      if ((a & b) == 0 && std::abs(v[a | b] - v[a]) > tol) {
        r.null_additive = fails({a, b}, "nu(B) = 0 but nu(A u B) != nu(A)");
        break;
      }
      if (a == full) break;
    }
    if (!r.null_additive.holds()) break;
  }

  r.property_sigma = holds(finite_note);
  for (std::size_t i = 0; i < nulls.size() && r.property_sigma.holds(); ++i) {
    for (std::size_t j = i + 1; j < nulls.size(); ++j) {
      if (!null(nulls[i] | nulls[j])) {
        r.property_sigma = fails({nulls[i], nulls[j]}, "nu(B1) = nu(B2) = 0 but nu(B1 u B2) > 0");
        break;
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Countable space, closed-form representations

std::vector<MeasurableSet> singletons(int count) {
  std::vector<MeasurableSet> out;
  for (int k = 0; k < count; ++k) out.emplace_back(EpSet::of({static_cast<std::uint64_t>(k)}));
  return out;
}

PropertyReport all_hold(const std::string& why) {
  PropertyReport r;
  for (PropertyFlag* f : {&r.monotone, &r.subadditive, &r.sigma_subadditive, &r.finitely_additive,
                          &r.sigma_additive, &r.null_additive, &r.property_sigma, &r.o_continuous,
                          &r.exhaustive, &r.regular}) {
    *f = holds(why);
  }
  return r;
}

// Case analysis for nu(empty) = 0, nu(finite nonempty) = a, nu(infinite) = b.
PropertyReport classify_cardinality(double a, double b) {
  if (a == 0.0 && b == 0.0) return all_hold("identically zero");
  PropertyReport r;
  const MeasurableSet evens = EpSet::residue_class(0, 2);
  const MeasurableSet odds = EpSet::residue_class(1, 2);

  r.monotone = a <= b ? holds("finite sets never exceed infinite ones")
                      : fails({EpSet::of({0}), EpSet::all()}, "nu({0}) > nu(nat)");
  r.subadditive = holds("a nonempty union has a nonempty part, an infinite union an infinite part");

  if (a > 0.0) {
    r.finitely_additive = fails({EpSet::of({0}), EpSet::of({1})}, "nu({0,1}) = a < 2a");
  } else {
    r.finitely_additive = fails({evens, odds}, "nu(nat) = b < 2b");
  }
  r.sigma_additive = r.finitely_additive;

  if (a > 0.0 || b == 0.0) {
    r.sigma_subadditive = holds("an infinite union of nonempty sets has infinite finite-part sum when a > 0");
  } else {
    r.sigma_subadditive = fails(singletons(4), "singletons {k} have value 0 but their union nat has value b > 0");
  }

  if (a > 0.0 && b == 0.0) {
    r.null_additive = fails({EpSet::of({0}), EpSet::tail_from(1)}, "nu({n >= 1}) = 0 but nu(nat) = 0 != nu({0})");
  } else {
    r.null_additive = holds(b == 0.0 ? "no nonempty null sets"
                                     : "null sets are exactly the finite sets, which do not change cardinality class");
  }

  if (a == 0.0 && b > 0.0) {
    r.property_sigma = fails(singletons(4), "singletons are null but their union nat has value b > 0");
  } else {
    r.property_sigma = holds(a > 0.0 ? "the only null set is the empty set" : "every set is null");
  }

  if (b > 0.0) {
    std::vector<MeasurableSet> tails;
    for (std::uint64_t k = 0; k < 4; ++k) tails.emplace_back(EpSet::tail_from(k));
    r.o_continuous = fails(std::move(tails), "tails {n >= k} decrease to the empty set with value b > 0");
  } else {
    r.o_continuous = holds(
        "infinite terms are null, and a decreasing chain that reaches a finite set stabilizes, so with empty "
        "intersection it reaches the empty set");
  }

  if (a > 0.0) {
    r.exhaustive = fails(singletons(4), "disjoint singletons all have value a > 0");
  } else {
    std::vector<MeasurableSet> seq;
    for (std::uint64_t k = 0; k < 4; ++k) {
      seq.emplace_back(EpSet::residue_class((std::uint64_t{1} << k) - 1, std::uint64_t{1} << (k + 1)));
    }
    r.exhaustive = fails(std::move(seq), "disjoint infinite residue classes 2^k - 1 mod 2^(k+1) all have value b > 0");
  }
  r.regular = holds("every subset of the discrete space nat is both open and closed");
  return r;
}

PropertyReport classify_nat(const SetFunction& nu) {
  switch (nu.kind()) {
    case SetFunction::Kind::AdditiveWeights:
      return all_hold("countably additive: sums of nonnegative summable weights");
    case SetFunction::Kind::CardinalityRule:
      return classify_cardinality(nu.finite_value(), nu.infinite_value());
    case SetFunction::Kind::Scaled:
      if (nu.alpha() == 0.0) return all_hold("identically zero");
      return classify(nu.inner());
    default:
      break;
  }
  PropertyReport r;
  const std::string why = "no decidable analysis for " + nu.describe() + " on nat";
  for (PropertyFlag* f : {&r.monotone, &r.subadditive, &r.sigma_subadditive, &r.finitely_additive,
                          &r.sigma_additive, &r.null_additive, &r.property_sigma, &r.o_continuous,
                          &r.exhaustive}) {
    *f = undecided(why);
  }
  r.regular = holds("every subset of the discrete space nat is both open and closed");
  return r;
}

double variation_nat(const SetFunction& nu, const EpSet& e) {
  switch (nu.kind()) {
    case SetFunction::Kind::AdditiveWeights:
      return nu(e);
    case SetFunction::Kind::CardinalityRule: {
      if (e.is_empty()) return 0.0;
      const Cardinality c = ep_cardinality(e);
      if (c.finite) return static_cast<double>(c.count) * nu.finite_value();
      // Infinitely many disjoint nonempty finite (or infinite) pieces fit inside e.
      return (nu.finite_value() > 0.0 || nu.infinite_value() > 0.0) ? std::numeric_limits<double>::infinity() : 0.0;
    }
    case SetFunction::Kind::Scaled: {
      if (nu.alpha() == 0.0) return 0.0;
      return nu.alpha() * variation_nat(nu.inner(), e);
    }
    default:
      throw Unsupported("variation of " + nu.describe() + " on nat has no decidable analysis");
  }
}

void require_finite(const SetFunction& nu, const char* op) {
  if (!nu.space().is_finite()) throw Unsupported(std::string(op) + " needs a finite space");
}

}  // namespace

PropertyReport classify(const SetFunction& nu) {
  if (nu.space().is_finite()) return classify_finite(nu);
  return classify_nat(nu);
}

double max_disjoint_family_sum(Mask e, const std::function<double(Mask)>& value) {
  const int k = std::popcount(e);
  if (k > kMaxFiniteSize) throw Unsupported("variation DP limited to " + std::to_string(kMaxFiniteSize) + " points");
  const std::size_t states = std::size_t{1} << k;
  std::vector<double> val(states);
  for (std::size_t m = 0; m < states; ++m) val[m] = m == 0 ? 0.0 : value(expand(static_cast<Mask>(m), e));
  std::vector<double> best(states, 0.0);
  for (std::size_t m = 1; m < states; ++m) {
    const Mask mm = static_cast<Mask>(m);
    const Mask low = mm & (~mm + 1);
    const Mask rest = mm ^ low;
    double b = best[rest];
    for (Mask s = rest;; s = (s - 1) & rest) {
      const Mask a = s | low;
      b = std::max(b, val[a] + best[mm ^ a]);
      if (s == 0) break;
    }
    best[m] = b;
  }
  return best[states - 1];
}

double variation(const SetFunction& nu, const MeasurableSet& e) {
  check_in_algebra(nu.space(), e);
  if (!nu.space().is_finite()) return variation_nat(nu, std::get<EpSet>(e));
  return max_disjoint_family_sum(std::get<Mask>(e), [&](Mask m) { return nu(m); });
}

double semivariation(const SetFunction& nu, const MeasurableSet& a) {
  // The variation is monotone, so the infimum over supersets is attained at A itself.
  return variation(nu, a);
}

bool is_atom(const SetFunction& nu, Mask a, Mask* witness) {
  require_finite(nu, "is_atom");
  const double tol = value_tolerance(nu);
  if (nu(a) <= tol) return false;
  for (Mask b = a;; b = (b - 1) & a) {
    if (nu(b) > tol && nu(a & ~b) > tol) {
      if (witness != nullptr) *witness = b;
      return false;
    }
    if (b == 0) break;
  }
  return true;
}

std::vector<Mask> find_atoms(const SetFunction& nu) {
  require_finite(nu, "find_atoms");
  if (nu.space().size() > kMaxExhaustiveSize) {
    throw Unsupported("find_atoms limited to " + std::to_string(kMaxExhaustiveSize) + " points");
  }
  const std::vector<double> v = tabulate_values(nu);
  const double tol = value_tolerance(nu);
  const Mask full = nu.space().full_mask();
  std::vector<Mask> atoms;
  for (Mask a = 1; a <= full; ++a) {
    if (v[a] > tol) {
      bool atom = true;
      for (Mask b = a; b != 0 && atom; b = (b - 1) & a) {
        if (v[b] > tol && v[a & ~b] > tol) atom = false;
      }
      if (atom) atoms.push_back(a);
    }
    if (a == full) break;
  }
  return atoms;
}

double variation_distance(const SetFunction& nu1, const SetFunction& nu2, const MeasurableSet& a) {
  if (!(nu1.space() == nu2.space())) throw SpaceMismatch("variation_distance on different spaces");
  require_finite(nu1, "variation_distance");
  check_in_algebra(nu1.space(), a);
  return max_disjoint_family_sum(std::get<Mask>(a), [&](Mask m) { return std::abs(nu1(m) - nu2(m)); });
}

}  // namespace nonadd
