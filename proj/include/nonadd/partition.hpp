#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nonadd/ground.hpp"

namespace nonadd {

/// Partition of a ground space into finitely many explicit blocks, optionally
/// followed by every remaining point as its own singleton block.
class Partition {
 public:
  /// Validates nonemptiness, disjointness and coverage exactly. With
  /// `singleton_tail`, points outside the explicit blocks are singleton blocks.
  Partition(const GroundSpace& space, std::vector<MeasurableSet> blocks, bool singleton_tail = false);

  /// The one-block partition {S}.
  static Partition trivial(const GroundSpace& space);
  /// All singletons; on nat this is the empty block list with a singleton tail.
  static Partition singletons(const GroundSpace& space);
  /// {{0}, ..., {k-1}, {n >= k}} on nat; {{0}, ..., {k-1}, rest} on a finite space.
  static Partition prefix_singletons(const GroundSpace& space, std::uint64_t k);

  const GroundSpace& space() const noexcept { return space_; }
  const std::vector<MeasurableSet>& blocks() const noexcept { return blocks_; }
  bool singleton_tail() const noexcept { return singleton_tail_; }
  /// Points covered by the singleton tail (empty without one).
  const MeasurableSet& tail_set() const noexcept { return tail_; }

  /// Number of explicit blocks.
  std::size_t block_count() const noexcept { return blocks_.size(); }
  std::string to_string() const;

 private:
  GroundSpace space_;
  std::vector<MeasurableSet> blocks_;
  bool singleton_tail_ = false;
  MeasurableSet tail_;
};

/// True iff every block of `fine` is contained in some block of `coarse`.
bool is_finer(const Partition& fine, const Partition& coarse);
/// The nonempty pairwise intersections of the blocks of p and q.
Partition common_refinement(const Partition& p, const Partition& q);
/// Equality of the block sets, independent of order.
bool same_blocks(const Partition& p, const Partition& q);

/// Partition with one chosen point in each explicit block.
class TaggedPartition {
 public:
  TaggedPartition(Partition partition, std::vector<std::uint64_t> tags);

  const Partition& partition() const noexcept { return partition_; }
  const std::vector<std::uint64_t>& tags() const noexcept { return tags_; }

 private:
  Partition partition_;
  std::vector<std::uint64_t> tags_;
};

/// Smallest point of each block.
TaggedPartition tag_with_minima(const Partition& p);

enum class RefineStrategy { SingletonFirst, BinarySplit, Exhaustive };

/// Pull-based stream of partitions. SingletonFirst and BinarySplit yield a
/// chain, each partition finer than the previous one; Exhaustive yields every
/// partition of a space with at most 5 points, coarser ones first.
class RefinementStream {
 public:
  RefinementStream(const GroundSpace& space, RefineStrategy strategy, std::size_t budget);

  std::optional<Partition> next();
  /// Drains the remaining partitions.
  std::vector<Partition> take_all();

 private:
  std::optional<Partition> advance();

  GroundSpace space_;
  RefineStrategy strategy_;
  std::size_t budget_;
  std::size_t produced_ = 0;
  std::optional<Partition> current_;
  std::vector<Partition> exhaustive_;
};

/// Every partition of a finite space with at most 5 points, ordered by block count.
std::vector<Partition> all_partitions(const GroundSpace& space);

}  // namespace nonadd
