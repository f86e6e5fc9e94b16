#include "nonadd/partition.hpp"

#include <algorithm>
#include <bit>

#include "nonadd/error.hpp"

namespace nonadd {

namespace {

std::uint64_t min_point(const MeasurableSet& s) {
  if (const Mask* m = std::get_if<Mask>(&s)) return static_cast<std::uint64_t>(std::countr_zero(*m));
  return *std::get<EpSet>(s).min_element();
}

bool is_singleton(const MeasurableSet& s) {
  if (const Mask* m = std::get_if<Mask>(&s)) return std::popcount(*m) == 1;
  const Cardinality c = ep_cardinality(std::get<EpSet>(s));
  return c.finite && c.count == 1;
}

}  // namespace

Partition::Partition(const GroundSpace& space, std::vector<MeasurableSet> blocks, bool singleton_tail)
    : space_(space), blocks_(std::move(blocks)), singleton_tail_(singleton_tail), tail_(empty_set(space)) {
  MeasurableSet covered = empty_set(space_);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    check_in_algebra(space_, blocks_[i]);
    if (is_empty(blocks_[i])) throw InvalidArgument("partition block " + std::to_string(i) + " is empty");
    if (!is_empty(set_intersection(covered, blocks_[i]))) {
      throw InvalidArgument("partition block " + set_to_string(blocks_[i]) + " overlaps an earlier block");
    }
    covered = set_union(covered, blocks_[i]);
  }
  const MeasurableSet rest = set_difference(full_set(space_), covered);
  if (singleton_tail_) {
    tail_ = rest;
  } else if (!is_empty(rest)) {
    throw InvalidArgument("partition blocks do not cover the space; missing " + set_to_string(rest));
  }
}

Partition Partition::trivial(const GroundSpace& space) { return Partition(space, {full_set(space)}); }

Partition Partition::singletons(const GroundSpace& space) {
  if (space.is_nat()) return Partition(space, {}, true);
  std::vector<MeasurableSet> blocks;
  for (int i = 0; i < space.size(); ++i) blocks.emplace_back(Mask{1} << i);
  return Partition(space, std::move(blocks));
}

Partition Partition::prefix_singletons(const GroundSpace& space, std::uint64_t k) {
  std::vector<MeasurableSet> blocks;
  if (space.is_nat()) {
    for (std::uint64_t i = 0; i < k; ++i) blocks.emplace_back(EpSet::of({i}));
    blocks.emplace_back(EpSet::tail_from(k));
    return Partition(space, std::move(blocks));
  }
  const std::uint64_t n = static_cast<std::uint64_t>(space.size());
  k = std::min(k, n);
  for (std::uint64_t i = 0; i < k; ++i) blocks.emplace_back(Mask{1} << i);
  const Mask rest = space.full_mask() & ~((Mask{1} << k) - 1);
  if (k < n) blocks.emplace_back(rest);
  return Partition(space, std::move(blocks));
}

std::string Partition::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < blocks_.size(); ++i) s += (i ? ", " : "") + set_to_string(blocks_[i]);
  if (singleton_tail_) s += std::string(blocks_.empty() ? "" : ", ") + "singletons of " + set_to_string(tail_);
  return s + "}";
}

bool is_finer(const Partition& fine, const Partition& coarse) {
  if (!(fine.space() == coarse.space())) throw SpaceMismatch("is_finer on partitions of different spaces");
  for (const auto& b : fine.blocks()) {
    bool inside = std::any_of(coarse.blocks().begin(), coarse.blocks().end(),
                              [&](const MeasurableSet& c) { return is_subset(b, c); });
    if (!inside && is_singleton(b) && is_subset(b, coarse.tail_set())) inside = true;
    if (!inside) return false;
  }
  // Tail singletons of `fine` sit inside whichever block of `coarse` covers them.
  return true;
}

Partition common_refinement(const Partition& p, const Partition& q) {
  if (!(p.space() == q.space())) throw SpaceMismatch("common_refinement on partitions of different spaces");
  std::vector<MeasurableSet> blocks;
  for (const auto& a : p.blocks()) {
    for (const auto& b : q.blocks()) {
      MeasurableSet c = set_intersection(a, b);
      if (!is_empty(c)) blocks.push_back(std::move(c));
    }
  }
  return Partition(p.space(), std::move(blocks), p.singleton_tail() || q.singleton_tail());
}

bool same_blocks(const Partition& p, const Partition& q) {
  if (!(p.space() == q.space()) || p.block_count() != q.block_count()) return false;
  if (p.singleton_tail() != q.singleton_tail()) return false;
  auto keys = [](const Partition& x) {
    std::vector<std::string> k;
    for (const auto& b : x.blocks()) k.push_back(set_to_string(b));
    std::sort(k.begin(), k.end());
    return k;
  };
  return keys(p) == keys(q);
}

TaggedPartition::TaggedPartition(Partition partition, std::vector<std::uint64_t> tags)
    : partition_(std::move(partition)), tags_(std::move(tags)) {
  if (tags_.size() != partition_.block_count()) {
    throw InvalidArgument("tagged partition needs one tag per block");
  }
  for (std::size_t i = 0; i < tags_.size(); ++i) {
    if (!contains(partition_.blocks()[i], tags_[i])) {
      throw InvalidArgument("tag " + std::to_string(tags_[i]) + " is not in block " +
                            set_to_string(partition_.blocks()[i]));
    }
  }
}

TaggedPartition tag_with_minima(const Partition& p) {
  std::vector<std::uint64_t> tags;
  for (const auto& b : p.blocks()) tags.push_back(min_point(b));
  return TaggedPartition(p, std::move(tags));
}

// ---------------------------------------------------------------------------
// Streams

std::vector<Partition> all_partitions(const GroundSpace& space) {
  if (!space.is_finite() || space.size() > 5) throw Unsupported("exhaustive partitions need a finite space with at most 5 points");
  const int n = space.size();
  std::vector<Partition> out;
  // Restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
  std::vector<int> a(n, 0);
  while (true) {
    const int k = *std::max_element(a.begin(), a.end()) + 1;
    std::vector<MeasurableSet> blocks(k, Mask{0});
    for (int i = 0; i < n; ++i) blocks[a[i]] = std::get<Mask>(blocks[a[i]]) | (Mask{1} << i);
    out.emplace_back(space, std::move(blocks));
    int i = n - 1;
    for (; i > 0; --i) {
      const int m = *std::max_element(a.begin(), a.begin() + i);
      if (a[i] <= m) {
        ++a[i];
        std::fill(a.begin() + i + 1, a.end(), 0);
        break;
      }
    }
    if (i == 0) break;
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Partition& x, const Partition& y) { return x.block_count() < y.block_count(); });
  return out;
}

RefinementStream::RefinementStream(const GroundSpace& space, RefineStrategy strategy, std::size_t budget)
    : space_(space), strategy_(strategy), budget_(budget) {
  if (budget == 0) throw InvalidArgument("refinement budget must be at least 1");
  if (strategy_ == RefineStrategy::Exhaustive) exhaustive_ = all_partitions(space_);
}

std::optional<Partition> RefinementStream::next() {
  if (produced_ >= budget_) return std::nullopt;
  auto p = advance();
  if (p) {
    ++produced_;
    current_ = p;
  }
  return p;
}

std::vector<Partition> RefinementStream::take_all() {
  std::vector<Partition> out;
  while (auto p = next()) out.push_back(std::move(*p));
  return out;
}

namespace {

// Splits a block in two, or returns nothing if it is a single point.
std::optional<std::pair<MeasurableSet, MeasurableSet>> halve(const MeasurableSet& b) {
  if (const Mask* m = std::get_if<Mask>(&b)) {
    const auto pts = mask_elements(*m);
    if (pts.size() < 2) return std::nullopt;
    Mask lo = 0;
    for (std::size_t i = 0; i < pts.size() / 2; ++i) lo |= Mask{1} << pts[i];
    return std::make_pair(MeasurableSet{lo}, MeasurableSet{*m & ~lo});
  }
  const EpSet& e = std::get<EpSet>(b);
  if (!e.is_finite()) {
    auto [x, y] = ep_split_infinite(e);
    return std::make_pair(MeasurableSet{std::move(x)}, MeasurableSet{std::move(y)});
  }
  const auto pts = e.finite_elements();
  if (pts.size() < 2) return std::nullopt;
  std::vector<std::uint64_t> first(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(pts.size() / 2));
  std::vector<std::uint64_t> second(pts.begin() + static_cast<std::ptrdiff_t>(pts.size() / 2), pts.end());
  return std::make_pair(MeasurableSet{EpSet::of(first)}, MeasurableSet{EpSet::of(second)});
}

}  // namespace

std::optional<Partition> RefinementStream::advance() {
  switch (strategy_) {
    case RefineStrategy::Exhaustive:
      if (produced_ < exhaustive_.size()) return exhaustive_[produced_];
      return std::nullopt;
    case RefineStrategy::SingletonFirst: {
      if (space_.is_finite() && produced_ >= static_cast<std::size_t>(space_.size())) return std::nullopt;
      return Partition::prefix_singletons(space_, produced_);
    }
    case RefineStrategy::BinarySplit: {
      if (!current_) return Partition::trivial(space_);
      std::vector<MeasurableSet> blocks;
      bool split = false;
      for (const auto& b : current_->blocks()) {
        if (auto h = halve(b)) {
          blocks.push_back(std::move(h->first));
          blocks.push_back(std::move(h->second));
          split = true;
        } else {
          blocks.push_back(b);
        }
      }
      if (!split) return std::nullopt;
      return Partition(space_, std::move(blocks));
    }
  }
  return std::nullopt;
}

}  // namespace nonadd
