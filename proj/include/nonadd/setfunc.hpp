#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nonadd/function.hpp"
#include "nonadd/ground.hpp"

namespace nonadd {

/// Monotone map g: [0, inf) -> [0, inf) with g(0) = 0, from a closed-form family.
class Distortion {
 public:
  enum class Kind { Power, AffineClamped, Table };

  /// g(t) = t^gamma, gamma > 0.
  static Distortion power(double gamma);
  /// g(t) = min(slope * t, cap).
  static Distortion affine_clamped(double slope, double cap);
  /// g given on the attainable base values; lookups off the table throw.
  static Distortion table(std::vector<std::pair<double, double>> points);

  Kind kind() const noexcept { return kind_; }
  double gamma() const noexcept { return a_; }
  double slope() const noexcept { return a_; }
  double cap() const noexcept { return b_; }
  const std::vector<std::pair<double, double>>& points() const noexcept { return points_; }

  double operator()(double t) const;

 private:
  Distortion(Kind k, double a, double b) : kind_(k), a_(a), b_(b) {}
  Kind kind_;
  double a_;
  double b_;
  std::vector<std::pair<double, double>> points_;
};

/// Non-additive set function nu: C -> [0, inf) with nu(empty) = 0.
///
/// Immutable; copies share the underlying representation.
class SetFunction {
 public:
  enum class Kind { Table, AdditiveWeights, Distortion, CardinalityRule, Scaled, Sum, Operator };

  /// Values over all 2^n subsets of a finite space, indexed by mask.
  static SetFunction table(int n, std::vector<double> values);
  /// Table built by evaluating `fn` on every subset.
  static SetFunction tabulate(const GroundSpace& space, const std::function<double(Mask)>& fn);
  /// nu(A) = sum of weights over A. On nat the weights must be summable.
  static SetFunction additive(GroundFunction weights);
  /// nu(A) = g(sum of weights over A).
  static SetFunction distortion(Distortion g, GroundFunction weights);
  /// nu(empty) = 0, nonempty finite sets -> finite_value, infinite sets -> infinite_value.
  static SetFunction cardinality_rule(const GroundSpace& space, double finite_value, double infinite_value);
  static SetFunction scaled(double alpha, SetFunction inner);
  static SetFunction sum(std::vector<SetFunction> parts);
  /// Opaque evaluator (used for integral operators); no closed-form analysis.
  static SetFunction op(const GroundSpace& space, std::string name,
                        std::function<double(const MeasurableSet&)> eval);

  const GroundSpace& space() const noexcept;
  Kind kind() const noexcept;
  std::string describe() const;

  const std::vector<double>& table_values() const;
  const GroundFunction& weights() const;
  const Distortion& distortion_fn() const;
  double finite_value() const;
  double infinite_value() const;
  double alpha() const;
  const SetFunction& inner() const;
  const std::vector<SetFunction>& parts() const;

  double operator()(const MeasurableSet& a) const;

 private:
  struct Node;
  explicit SetFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

double evaluate(const SetFunction& nu, const MeasurableSet& a);

/// All 2^n values of a set function on a finite space, indexed by mask.
std::vector<double> tabulate_values(const SetFunction& nu);
SetFunction to_table(const SetFunction& nu);

/// nu({n}) as a closed-form function on nat. Throws Unsupported where no closed form exists.
NatFunction singleton_profile(const SetFunction& nu);
/// nu({s}) for a single point.
double singleton_value(const SetFunction& nu, std::uint64_t s);

/// Absolute tolerance used for equality / nullity tests on this set function's values.
double value_tolerance(const SetFunction& nu);

// ---------------------------------------------------------------------------
// Classification

enum class Verdict { Holds, Fails, NotDecidable };

const char* to_string(Verdict v);

/// Concrete sets exhibiting a failure; for sequence witnesses, the first members.
struct Witness {
  std::vector<MeasurableSet> sets;
  std::string description;
};

struct PropertyFlag {
  Verdict verdict = Verdict::NotDecidable;
  std::optional<Witness> witness;
  std::string rationale;

  bool holds() const noexcept { return verdict == Verdict::Holds; }
};

struct PropertyReport {
  PropertyFlag monotone;
  PropertyFlag subadditive;
  PropertyFlag sigma_subadditive;
  PropertyFlag finitely_additive;
  PropertyFlag sigma_additive;
  PropertyFlag null_additive;
  PropertyFlag property_sigma;
  PropertyFlag o_continuous;
  PropertyFlag exhaustive;
  PropertyFlag regular;

  bool is_submeasure() const noexcept { return monotone.holds() && subadditive.holds(); }
  /// (name, flag) pairs in declaration order.
  std::vector<std::pair<std::string, const PropertyFlag*>> flags() const;
};

PropertyReport classify(const SetFunction& nu);

// ---------------------------------------------------------------------------
// Variation, semivariation, atoms

/// sup over finite disjoint families {A_i} inside E of sum nu(A_i); may be +inf on nat.
double variation(const SetFunction& nu, const MeasurableSet& e);
/// inf of variation(nu, B) over measurable B containing A.
double semivariation(const SetFunction& nu, const MeasurableSet& a);
/// Every atom of nu on a finite space with at most kMaxExhaustiveSize points.
std::vector<Mask> find_atoms(const SetFunction& nu);
bool is_atom(const SetFunction& nu, Mask a, Mask* witness = nullptr);
/// Variation of the signed difference nu1 - nu2 over subsets of A.
double variation_distance(const SetFunction& nu1, const SetFunction& nu2, const MeasurableSet& a);

/// Largest sum of values over disjoint families of nonempty submasks of `e`,
/// where `value(m)` is nonnegative. Runs in O(3^|e|).
double max_disjoint_family_sum(Mask e, const std::function<double(Mask)>& value);

}  // namespace nonadd
