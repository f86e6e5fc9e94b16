#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nonadd/interval.hpp"
#include "nonadd/rl_integral.hpp"
#include "nonadd/setfunc.hpp"

namespace nonadd {

/// Interval-valued set function Gamma(A) = [nu1(A), nu2(A)].
class IvSetFunction {
 public:
  /// Checks nu1 <= nu2 exhaustively on finite spaces and on probe sets on nat.
  IvSetFunction(SetFunction nu1, SetFunction nu2);

  const SetFunction& nu1() const noexcept { return nu1_; }
  const SetFunction& nu2() const noexcept { return nu2_; }
  const GroundSpace& space() const noexcept { return nu1_.space(); }

  Interval operator()(const MeasurableSet& a) const;

 private:
  SetFunction nu1_;
  SetFunction nu2_;
};

IvSetFunction iv_sum(const IvSetFunction& a, const IvSetFunction& b);
IvSetFunction iv_scale(const IvSetFunction& a, double alpha);

/// Monotone w.r.t. the weak interval order and subadditive w.r.t. Minkowski
/// sums; equivalently both endpoints are submeasures.
bool is_multisubmeasure(const IvSetFunction& gamma);

/// Interval-valued function H(s) = [h1(s), h2(s)] with 0 <= h1 <= h2.
class IvFunction {
 public:
  IvFunction(GroundFunction h1, GroundFunction h2);

  const GroundFunction& h1() const noexcept { return h1_; }
  const GroundFunction& h2() const noexcept { return h2_; }
  const GroundSpace& space() const noexcept { return h1_.space(); }

  Interval at(std::uint64_t s) const { return Interval(h1_.at(s), h2_.at(s)); }
  /// Bounded exactly when h2 is; always true in the closed-form tail model.
  bool is_bounded() const noexcept { return h2_.is_bounded(); }

 private:
  GroundFunction h1_;
  GroundFunction h2_;
};

IvFunction iv_sum(const IvFunction& a, const IvFunction& b);
IvFunction iv_scale(const IvFunction& a, double alpha);
/// Pointwise lattice operations; finite spaces only.
IvFunction iv_meet(const IvFunction& a, const IvFunction& b);
IvFunction iv_join(const IvFunction& a, const IvFunction& b);
bool iv_leq(const IvFunction& a, const IvFunction& b);
bool iv_subset(const IvFunction& a, const IvFunction& b);
/// sup over s of d_H(G(s), H(s)).
double sup_hausdorff(const IvFunction& g, const IvFunction& h);

/// Direct Minkowski sum of H(t_i) * Gamma(B_i) over a tagged partition.
Interval minkowski_sum(const IvFunction& h, const IvSetFunction& gamma, const TaggedPartition& p);

struct IvIntegralReport {
  Interval value;
  IntegralReport lower;
  IntegralReport upper;
  /// d_H between the endpoint pair and the direct Minkowski evaluation (finite spaces).
  std::optional<double> minkowski_gap;
};

/// [integral of h1 d nu1, integral of h2 d nu2] over E.
IvIntegralReport iv_rl_integrate(const IvFunction& h, const IvSetFunction& gamma, const MeasurableSet& e);
Interval iv_rl_value(const IvFunction& h, const IvSetFunction& gamma, const MeasurableSet& e);
Interval iv_rl_value(const IvFunction& h, const IvSetFunction& gamma);

/// Properties of the set operator T_H(E) = integral of H over E (finite spaces).
struct IvIndefiniteReport {
  /// T_H(E) for every mask E.
  std::vector<Interval> values;
  double max_additivity_gap = 0.0;
  bool finitely_additive = false;
  double norm_s = 0.0;
  double norm_expected = 0.0;
  double variation_s = 0.0;
  bool gamma_monotone = false;
  /// Checked only when gamma is monotone.
  std::optional<bool> monotone;
  bool gamma_dh_multimeasure = false;
  bool countably_additive = false;
};

IvIndefiniteReport iv_indefinite(const IvFunction& h, const IvSetFunction& gamma);

/// One relation of the monotonicity suite, checked for every E.
struct RelationCheck {
  std::string name;
  /// False when the relation's hypothesis does not hold for the inputs.
  bool applicable = true;
  std::size_t cases = 0;
  std::size_t violations = 0;
  std::optional<Mask> witness;
  double worst_excess = 0.0;
};

struct IvSuiteReport {
  std::vector<RelationCheck> checks;
  double variation_nu1 = 0.0;
  double variation_nu2 = 0.0;

  std::size_t violations() const;
};

/// Order, inclusion, lattice, additivity, homogeneity and distance relations
/// between integrals of G, H against Gamma, Gamma1, Gamma2, on every subset.
IvSuiteReport iv_monotonicity_suite(const IvFunction& g, const IvFunction& h, const IvSetFunction& gamma,
                                    const IvSetFunction& gamma1, const IvSetFunction& gamma2, double alpha = 2.0);

struct AtomIntegral {
  std::uint64_t point = 0;
  /// H(b) * Gamma({b}).
  Interval value;
  /// Integral of H over B.
  Interval integral;
  bool matches_integral = false;
};

/// For an atom B of both endpoints, the single point b carrying the mass of B.
/// Throws NotAnAtom or NoSinglePoint.
AtomIntegral iv_atom_integral(const IvFunction& h, const IvSetFunction& gamma, Mask b);

struct AtomConvergenceStep {
  std::size_t n = 0;
  double distance = 0.0;
  double bound = 0.0;
  bool holds = false;
};

/// d_H of the integrals over B of H_n and H against the bound d_H(H_n(b), H(b)) * variation(nu2, B).
std::vector<AtomConvergenceStep> atom_convergence(const std::vector<IvFunction>& hn, const IvFunction& h,
                                                  const IvSetFunction& gamma, Mask b);

}  // namespace nonadd
