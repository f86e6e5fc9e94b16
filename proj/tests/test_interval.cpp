#include <doctest.h>

#include <cmath>

#include "nonadd/error.hpp"
#include "nonadd/interval.hpp"
#include "support/generators.hpp"

using namespace nonadd;

namespace {

Interval random_iv(testgen::Rng& rng) {
  const double a = gen::uniform(rng, 0.0, 5.0);
  return Interval(a, a + gen::uniform(rng, 0.0, 5.0));
}

}  // namespace

TEST_CASE("interval construction") {
  CHECK_THROWS_AS(Interval(2, 1), InvalidInterval);
  CHECK_THROWS_AS(Interval(-1, 1), InvalidInterval);
  CHECK_THROWS_AS(Interval(0, INFINITY), InvalidInterval);
  CHECK_THROWS_AS(Interval(NAN, 1), InvalidInterval);
}

TEST_CASE("interval operations") {
  CHECK(hausdorff(Interval(1, 3), Interval(2, 5)) == 2.0);
  CHECK(iv_mul(Interval(1, 2), Interval(3, 4)) == Interval(3, 8));
  CHECK(iv_norm(Interval(0, 4)) == 4.0);
  CHECK(hausdorff(Interval(0, 4), Interval(0, 1.5)) == 2.5);
  CHECK(Interval(1, 2) + Interval(3, 5) == Interval(4, 7));
  CHECK(iv_scale(Interval(1, 2), 3) == Interval(3, 6));
  CHECK(iv_meet(Interval(1, 4), Interval(2, 3)) == Interval(1, 3));
  CHECK(iv_join(Interval(1, 4), Interval(2, 3)) == Interval(2, 4));
  CHECK(iv_leq(Interval(1, 3), Interval(2, 3)));
  CHECK_FALSE(iv_leq(Interval(2, 3), Interval(1, 4)));
  CHECK(iv_subset(Interval(2, 3), Interval(1, 4)));
  CHECK(Interval(1, 2).to_string() == "[1, 2]");
}

TEST_CASE("interval algebra laws") {
  testgen::Rng rng(41);
  const Interval zero(0, 0);
  for (int iter = 0; iter < 1000; ++iter) {
    const Interval a = random_iv(rng);
    const Interval b = random_iv(rng);
    const Interval c = random_iv(rng);
    const double l = gen::uniform(rng, 0.0, 3.0);
    CHECK(hausdorff(a, a) == 0.0);
    CHECK(hausdorff(a, b) == hausdorff(b, a));
    CHECK(hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c) + 1e-12);
    CHECK(a + b == b + a);
    CHECK(hausdorff((a + b) + c, a + (b + c)) <= 1e-12);
    CHECK(a + zero == a);
    CHECK(hausdorff(iv_scale(a + b, l), iv_scale(a, l) + iv_scale(b, l)) <= 1e-12);
    CHECK(hausdorff(a + c, b + c) == doctest::Approx(hausdorff(a, b)).epsilon(1e-12));
    // leq and subset coincide on intervals starting at 0
    const Interval x(0, a.hi());
    const Interval y(0, b.hi());
    CHECK(iv_leq(x, y) == iv_subset(x, y));
  }
}

TEST_CASE("sequence limits") {
  const ScalarSeq one = ScalarSeq::constant(1.0);
  const ScalarSeq two = ScalarSeq::constant(2.0);
  CHECK(iv_seq_liminf({one, two}) == Interval(1, 2));

  const ScalarSeq inv({}, ScalarSeq::Convergent{0.0, 1.0, false, 0.5});
  const ScalarSeq inv1({}, ScalarSeq::Convergent{1.0, 1.0, false, 0.5});
  CHECK(iv_seq_liminf({inv, inv1}) == Interval(0, 1));
  CHECK(iv_seq_sup({inv, inv1}) == Interval(1, 2));
  CHECK(iv_seq_inf({inv, inv1}) == Interval(0, 1));

  const ScalarSeq alt_lo({}, ScalarSeq::Cycle{{0.0, 1.0}});
  const ScalarSeq alt_hi({}, ScalarSeq::Cycle{{1.0, 2.0}});
  CHECK(iv_seq_liminf({alt_lo, alt_hi}) == Interval(0, 1));

  const ScalarSeq up({0.5}, ScalarSeq::Divergent{});
  CHECK_THROWS_AS(up.sup(), UnboundedSup);
  CHECK(up.liminf() == INFINITY);
}
