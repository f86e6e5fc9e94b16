#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nonadd/function.hpp"
#include "nonadd/partition.hpp"
#include "nonadd/setfunc.hpp"

namespace nonadd {

enum class IntegralStatus { Exact, Converged, Diverged, NotIntegrable };

const char* to_string(IntegralStatus s);

/// Range of tagged sums sum f(t_i) nu(B_i) over all tag choices.
struct SumRange {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  double mid() const noexcept { return 0.5 * (lo + hi); }
};

struct TraceEntry {
  std::size_t block_count = 0;
  double sum_lo = 0.0;
  double sum_hi = 0.0;
};

/// Partition together with the tag-sum range it was reported with.
struct WitnessPartition {
  Partition partition;
  SumRange sums;
};

struct IntegralReport {
  double value = 0.0;
  IntegralStatus status = IntegralStatus::Exact;
  /// Width of the final tag-sum range for Converged results.
  double achieved_eps = 0.0;
  std::vector<TraceEntry> trace;
  /// Diverged: the refinement chain with unbounded sums.
  /// NotIntegrable: two partitions, the second finer, whose sums are separated.
  std::vector<WitnessPartition> witness;
  /// Partial sums (cut-off, value) of a divergent singleton series.
  std::vector<std::pair<std::uint64_t, double>> partial_sums;
  std::string note;

  bool integrable() const noexcept {
    return status == IntegralStatus::Exact || status == IntegralStatus::Converged;
  }
};

/// Range of sum f(t_i) nu(B_i) over tags; singleton-tail points contribute f(n) nu({n}).
SumRange tag_sum_range(const GroundFunction& f, const SetFunction& nu, const Partition& p);
double tagged_sum(const GroundFunction& f, const SetFunction& nu, const TaggedPartition& p);

/// Integral over E computed through the singleton partition, the maximum of
/// the refinement order on these spaces.
IntegralReport rl_integrate(const GroundFunction& f, const SetFunction& nu, const MeasurableSet& e);
IntegralReport rl_integrate(const GroundFunction& f, const SetFunction& nu);
/// Value of rl_integrate; throws SeriesDiverges if f is not integrable on E.
double rl_value(const GroundFunction& f, const SetFunction& nu, const MeasurableSet& e);
double rl_value(const GroundFunction& f, const SetFunction& nu);

struct GouldOptions {
  /// Number of partitions explored on nat.
  std::size_t budget = 200;
  /// Target width of the tag-sum range.
  double tolerance = 1e-9;
  /// Minimum increment of a divergent run.
  double delta = 0.5;
  /// Number of partitions in a divergent run.
  std::size_t run_length = 5;
};

/// Limit over finite partitions. On nat a greedy refinement search is run:
/// each step refines the block whose best split moves the sum most or narrows
/// its tag range most.
IntegralReport gould_integrate(const GroundFunction& f, const SetFunction& nu, const GouldOptions& opts = {});

/// Partial sums over countable partitions in canonical block order.
IntegralReport birkhoff_simple_integrate(const GroundFunction& f, const SetFunction& nu);

/// T_f(E) = integral of f over E. A table on finite spaces. Requires f >= 0.
SetFunction indefinite_integral(const GroundFunction& f, const SetFunction& nu);

struct ComparisonReport {
  IntegralReport rl;
  IntegralReport gould;
  IntegralReport birkhoff;
  bool agree = false;
  std::string counterexample;
};

ComparisonReport compare_integrals(const GroundFunction& f, const SetFunction& nu, const GouldOptions& opts = {},
                                   double tolerance = 1e-9);

}  // namespace nonadd
