#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "nonadd/ground.hpp"

namespace nonadd {

/// One geometric term coef * ratio^n with 0 < ratio <= 1 (ratio 1 is a constant).
struct GeoTerm {
  double coef = 0.0;
  double ratio = 1.0;

  friend bool operator==(const GeoTerm&, const GeoTerm&) = default;
};

/// Real function on the naturals in the closed-form tail model.
///
/// Explicit values for n < L; for n >= L the value is the sum of the geometric
/// terms of residue class (n - L) mod p. Every such function is bounded.
class NatFunction {
 public:
  NatFunction();
  NatFunction(std::vector<double> prefix, std::vector<std::vector<GeoTerm>> classes);

  static NatFunction constant(double c);
  /// coef * ratio^n for every n.
  static NatFunction geometric(double coef, double ratio);

  double at(std::uint64_t n) const;

  const std::vector<double>& prefix() const noexcept { return prefix_; }
  const std::vector<std::vector<GeoTerm>>& classes() const noexcept { return classes_; }
  std::size_t prefix_length() const noexcept { return prefix_.size(); }
  std::size_t period() const noexcept { return classes_.size(); }
  /// Terms of the residue class containing n (n >= prefix_length()).
  const std::vector<GeoTerm>& terms_at(std::uint64_t n) const;

  /// Re-expresses the function with at least `len` explicit values and a period
  /// that is a multiple of `per`.
  NatFunction aligned(std::size_t len, std::size_t per) const;

  friend bool operator==(const NatFunction&, const NatFunction&) = default;

 private:
  void normalize();

  std::vector<double> prefix_;
  std::vector<std::vector<GeoTerm>> classes_;
};

NatFunction nat_sum(const NatFunction& a, const NatFunction& b);
NatFunction nat_product(const NatFunction& a, const NatFunction& b);
NatFunction nat_scale(const NatFunction& a, double alpha);
/// |f|^p. Throws Unsupported when a residue class mixes signs in a way that has
/// no closed form.
NatFunction nat_abs_pow(const NatFunction& a, double p);
NatFunction nat_restrict(const NatFunction& a, const EpSet& set);

/// Sum of f over a set, with an absolute-convergence verdict.
struct SeriesSum {
  double value = 0.0;
  bool converges = true;
  /// Partial sums at increasing cut-offs; filled when the series diverges.
  std::vector<std::pair<std::uint64_t, double>> partial_sums;
};

SeriesSum nat_series(const NatFunction& f, const EpSet& set);

/// Infimum and supremum of a function over a nonempty set.
struct Extrema {
  double inf = 0.0;
  double sup = 0.0;
  bool inf_attained = true;
  bool sup_attained = true;
};

/// Real function on a ground space: a value table on finite spaces, a NatFunction on the naturals.
class GroundFunction {
 public:
  static GroundFunction finite(std::vector<double> values);
  static GroundFunction nat(NatFunction f);
  static GroundFunction constant(const GroundSpace& space, double c);
  static GroundFunction indicator(const GroundSpace& space, const MeasurableSet& set);

  const GroundSpace& space() const noexcept { return space_; }
  double at(std::uint64_t s) const;

  bool is_finite() const noexcept { return space_.is_finite(); }
  const std::vector<double>& values() const;
  const NatFunction& nat_repr() const;

  /// Always true in this model: tails are constant or geometric.
  bool is_bounded() const noexcept { return true; }
  /// sup over the space of |f|.
  double sup_abs() const;

  friend bool operator==(const GroundFunction&, const GroundFunction&) = default;

 private:
  GroundFunction(GroundSpace space, std::variant<std::vector<double>, NatFunction> repr)
      : space_(space), repr_(std::move(repr)) {}

  friend GroundFunction fn_sum(const GroundFunction&, const GroundFunction&);
  friend GroundFunction fn_product(const GroundFunction&, const GroundFunction&);
  friend GroundFunction fn_scale(const GroundFunction&, double);
  friend GroundFunction fn_abs_pow(const GroundFunction&, double);
  friend GroundFunction fn_restrict(const GroundFunction&, const MeasurableSet&);

  GroundSpace space_;
  std::variant<std::vector<double>, NatFunction> repr_;
};

GroundFunction fn_sum(const GroundFunction& a, const GroundFunction& b);
GroundFunction fn_product(const GroundFunction& a, const GroundFunction& b);
GroundFunction fn_scale(const GroundFunction& a, double alpha);
GroundFunction fn_abs_pow(const GroundFunction& a, double p);
/// f * chi_E.
GroundFunction fn_restrict(const GroundFunction& a, const MeasurableSet& set);
GroundFunction fn_linear(double alpha, const GroundFunction& a, double beta, const GroundFunction& b);
/// Pointwise min / max; finite spaces only.
GroundFunction fn_min(const GroundFunction& a, const GroundFunction& b);
GroundFunction fn_max(const GroundFunction& a, const GroundFunction& b);

/// Exact inf / sup of f over a nonempty set. Throws EmptySet for the empty set.
Extrema extrema_of(const GroundFunction& f, const MeasurableSet& set);
Extrema ep_extrema_of(const NatFunction& f, const EpSet& set);

}  // namespace nonadd
