#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nonadd {

/// Subset of a finite space {0, ..., n-1}; bit i set means point i belongs.
using Mask = std::uint32_t;

/// Largest finite space the library accepts (table set functions need 2^n slots).
inline constexpr int kMaxFiniteSize = 20;
/// Largest finite space on which exhaustive scans (classification, atoms) run.
inline constexpr int kMaxExhaustiveSize = 12;

class GroundSpace {
 public:
  enum class Kind { Finite, CountableNat };

  static GroundSpace finite(int n);
  static GroundSpace nat() { return GroundSpace(Kind::CountableNat, 0); }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  bool is_nat() const noexcept { return kind_ == Kind::CountableNat; }
  /// Element count of a finite space.
  int size() const noexcept { return n_; }
  Mask full_mask() const noexcept;

  std::string to_string() const;

  friend bool operator==(const GroundSpace&, const GroundSpace&) = default;

 private:
  GroundSpace(Kind k, int n) : kind_(k), n_(n) {}
  Kind kind_;
  int n_;
};

/// Eventually periodic subset of the naturals.
///
/// Membership of n < L is prefix[n]; membership of n >= L is period[(n - L) % p].
/// Values are always kept canonical (minimal period, minimal prefix), so two
/// sets are equal exactly when their representations are identical.
class EpSet {
 public:
  /// The empty set.
  EpSet();
  EpSet(std::vector<bool> prefix, std::vector<bool> period);

  static EpSet empty() { return EpSet(); }
  static EpSet all();
  static EpSet of(const std::vector<std::uint64_t>& elements);
  /// {n : n mod modulus == residue}.
  static EpSet residue_class(std::uint64_t residue, std::uint64_t modulus);
  /// {n : n >= start}.
  static EpSet tail_from(std::uint64_t start);
  /// Parses "prefix:0110 period:10" (bits indexed from 0).
  static EpSet parse(std::string_view text);

  const std::vector<bool>& prefix() const noexcept { return prefix_; }
  const std::vector<bool>& period() const noexcept { return period_; }
  std::size_t prefix_length() const noexcept { return prefix_.size(); }
  std::size_t period_length() const noexcept { return period_.size(); }

  bool contains(std::uint64_t n) const noexcept;
  bool is_empty() const noexcept;
  bool is_finite() const noexcept;
  /// Smallest element; nullopt for the empty set.
  std::optional<std::uint64_t> min_element() const noexcept;
  /// Elements strictly below `bound`, ascending.
  std::vector<std::uint64_t> elements_below(std::uint64_t bound) const;
  /// All elements of a finite set, ascending. Throws Unsupported for infinite sets.
  std::vector<std::uint64_t> finite_elements() const;

  std::string to_string() const;

  friend bool operator==(const EpSet&, const EpSet&) = default;

 private:
  void canonicalize();

  std::vector<bool> prefix_;
  std::vector<bool> period_;
};

enum class SetOp { Union, Intersection, Difference };

EpSet ep_combine(const EpSet& a, const EpSet& b, SetOp op);
EpSet ep_complement(const EpSet& a);

/// Finite(k) when `finite` is true, otherwise Infinite.
struct Cardinality {
  bool finite = true;
  std::uint64_t count = 0;

  static Cardinality infinite() { return {false, 0}; }
  friend bool operator==(const Cardinality&, const Cardinality&) = default;
};

Cardinality ep_cardinality(const EpSet& a);

/// Splits an infinite set into two disjoint infinite halves by doubling its period.
std::pair<EpSet, EpSet> ep_split_infinite(const EpSet& a);

std::uint64_t lcm_checked(std::uint64_t a, std::uint64_t b);

// ---------------------------------------------------------------------------
// Measurable sets: a bitmask on finite spaces, an EpSet on the naturals.

using MeasurableSet = std::variant<Mask, EpSet>;

bool is_empty(const MeasurableSet& a);
/// Throws NotInAlgebra if `a` does not belong to `space`'s algebra.
void check_in_algebra(const GroundSpace& space, const MeasurableSet& a);
MeasurableSet set_union(const MeasurableSet& a, const MeasurableSet& b);
MeasurableSet set_intersection(const MeasurableSet& a, const MeasurableSet& b);
MeasurableSet set_difference(const MeasurableSet& a, const MeasurableSet& b);
bool is_subset(const MeasurableSet& a, const MeasurableSet& b);
MeasurableSet full_set(const GroundSpace& space);
MeasurableSet empty_set(const GroundSpace& space);
bool contains(const MeasurableSet& a, std::uint64_t point);
std::string set_to_string(const MeasurableSet& a);

/// Elements of a finite mask, ascending.
std::vector<int> mask_elements(Mask m);
Mask mask_of(const std::vector<int>& elements);

}  // namespace nonadd
