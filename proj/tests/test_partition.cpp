#include <doctest.h>

#include "nonadd/error.hpp"
#include "nonadd/partition.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace nonadd;

namespace {

Partition fin(int n, std::vector<Mask> blocks) {
  std::vector<MeasurableSet> b(blocks.begin(), blocks.end());
  return Partition(GroundSpace::finite(n), b);
}

}  // namespace

TEST_CASE("partitions validate") {
  CHECK_NOTHROW(fin(3, {0b011, 0b100}));
  CHECK_THROWS_AS(fin(3, {0b011, 0b110}), InvalidArgument);
  CHECK_THROWS_AS(fin(3, {0b011}), InvalidArgument);
  CHECK_THROWS_AS(fin(3, {0b111, 0}), InvalidArgument);
  CHECK_THROWS(Partition(GroundSpace::nat(), {EpSet::residue_class(0, 2)}));
  CHECK_NOTHROW(Partition(GroundSpace::nat(), {EpSet::residue_class(0, 2)}, true));
}

TEST_CASE("tagged partitions check membership") {
  const Partition p = fin(3, {0b011, 0b100});
  CHECK_NOTHROW(TaggedPartition(p, {1, 2}));
  CHECK_THROWS_AS(TaggedPartition(p, {2, 2}), InvalidArgument);
  CHECK_THROWS_AS(TaggedPartition(p, {0}), InvalidArgument);
  CHECK(tag_with_minima(p).tags() == std::vector<std::uint64_t>{0, 2});
}

TEST_CASE("is_finer") {
  const auto s = GroundSpace::finite(3);
  const Partition a = fin(3, {0b011, 0b100});
  const Partition b = fin(3, {0b001, 0b110});
  CHECK(is_finer(Partition::singletons(s), a));
  CHECK(is_finer(a, a));
  CHECK_FALSE(is_finer(a, b));
  CHECK(is_finer(a, Partition::trivial(s)));
}

TEST_CASE("common refinement") {
  const Partition a = fin(3, {0b011, 0b100});
  const Partition b = fin(3, {0b001, 0b110});
  CHECK(same_blocks(common_refinement(a, a), a));
  CHECK(same_blocks(common_refinement(a, b), Partition::singletons(GroundSpace::finite(3))));

  const auto nat = GroundSpace::nat();
  const Partition parity(nat, {EpSet::residue_class(0, 2), EpSet::residue_class(1, 2)});
  const Partition head(nat, {EpSet::of({0, 1, 2, 3}), EpSet::tail_from(4)});
  const Partition r = common_refinement(parity, head);
  CHECK(r.block_count() == 4);
  for (std::uint64_t n = 0; n < 20; ++n) {
    int hits = 0;
    for (const auto& blk : r.blocks()) hits += contains(blk, n) ? 1 : 0;
    CHECK(hits == 1);
  }
}

TEST_CASE("common refinement is the coarsest common refinement") {
  for (int n = 1; n <= 4; ++n) {
    const auto all = all_partitions(GroundSpace::finite(n));
    CHECK(all.size() == oracle::bell(n));
    for (const auto& p : all) {
      for (const auto& q : all) {
        const Partition r = common_refinement(p, q);
        REQUIRE(is_finer(r, p));
        REQUIRE(is_finer(r, q));
        for (const auto& c : all) {
          if (is_finer(c, p) && is_finer(c, q)) REQUIRE(is_finer(c, r));
        }
      }
    }
  }
}

TEST_CASE("is_finer is a partial order") {
  const auto all = all_partitions(GroundSpace::finite(4));
  for (const auto& a : all) {
    CHECK(is_finer(a, a));
    for (const auto& b : all) {
      if (is_finer(a, b) && is_finer(b, a)) CHECK(same_blocks(a, b));
      for (const auto& c : all) {
        if (is_finer(a, b) && is_finer(b, c)) REQUIRE(is_finer(a, c));
      }
    }
  }
}

TEST_CASE("refinement streams") {
  const auto f3 = GroundSpace::finite(3);
  auto chain = RefinementStream(f3, RefineStrategy::SingletonFirst, 10).take_all();
  REQUIRE_FALSE(chain.empty());
  CHECK(same_blocks(chain.back(), Partition::singletons(f3)));
  for (std::size_t i = 1; i < chain.size(); ++i) CHECK(is_finer(chain[i], chain[i - 1]));

  auto nat = RefinementStream(GroundSpace::nat(), RefineStrategy::SingletonFirst, 3).take_all();
  REQUIRE(nat.size() == 3);
  CHECK(same_blocks(nat[2], Partition::prefix_singletons(GroundSpace::nat(), 2)));
  CHECK(nat[2].block_count() == 3);

  auto ex = RefinementStream(f3, RefineStrategy::Exhaustive, 100).take_all();
  CHECK(ex.size() == 5);
  for (std::size_t i = 1; i < ex.size(); ++i) CHECK(ex[i - 1].block_count() <= ex[i].block_count());

  auto bs = RefinementStream(GroundSpace::nat(), RefineStrategy::BinarySplit, 4).take_all();
  CHECK(bs.size() == 4);
  for (std::size_t i = 1; i < bs.size(); ++i) CHECK(is_finer(bs[i], bs[i - 1]));
}
