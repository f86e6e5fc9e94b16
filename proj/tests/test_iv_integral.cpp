#include <doctest.h>

#include <cmath>

#include "nonadd/error.hpp"
#include "nonadd/iv_integral.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace nonadd;

namespace {

IvSetFunction singles(std::vector<double> a, std::vector<double> b) {
  return IvSetFunction(SetFunction::additive(GroundFunction::finite(std::move(a))),
                       SetFunction::additive(GroundFunction::finite(std::move(b))));
}

// Atom {0, 1} carried by point 1.
IvSetFunction atom_gamma() {
  return IvSetFunction(SetFunction::table(3, {0, 0, 1, 1, 0.5, 0.5, 1.5, 1.5}),
                       SetFunction::table(3, {0, 0, 2, 2, 0.5, 0.5, 2.5, 2.5}));
}

IvFunction atom_h() { return IvFunction(GroundFunction::finite({5, 1, 2}), GroundFunction::finite({7, 3, 2})); }

}  // namespace

TEST_CASE("inputs validate endpoint order") {
  CHECK_THROWS_AS(IvSetFunction(SetFunction::table(1, {0, 2}), SetFunction::table(1, {0, 1})), InvalidArgument);
  CHECK_THROWS_AS(IvFunction(GroundFunction::finite({2}), GroundFunction::finite({1})), InvalidArgument);
  CHECK_THROWS_AS(IvFunction(GroundFunction::finite({-1}), GroundFunction::finite({1})), InvalidArgument);
}

TEST_CASE("endpoint example") {
  const IvFunction h(GroundFunction::finite({1, 1}), GroundFunction::finite({2, 3}));
  const Interval v = iv_rl_value(h, singles({0.1, 0.2}, {0.3, 0.4}));
  CHECK(v.lo() == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(v.hi() == doctest::Approx(1.8).epsilon(1e-15));
}

TEST_CASE("endpoint decomposition equals the direct Minkowski evaluation") {
  testgen::Rng rng(201);
  for (int iter = 0; iter < 300; ++iter) {
    const int n = gen::uniform_int(rng, 1, 7);
    const IvSetFunction gamma = gen::iv_table(rng, n);
    const IvFunction h = gen::iv_function(rng, n, 2.0);
    const Mask e = testgen::mask(rng, n);
    const IvIntegralReport r = iv_rl_integrate(h, gamma, e);
    const auto [lo, hi] = oracle::minkowski(h, gamma, e);
    CHECK(std::abs(r.value.lo() - lo) <= 1e-12 * std::max(1.0, lo));
    CHECK(std::abs(r.value.hi() - hi) <= 1e-12 * std::max(1.0, hi));
    REQUIRE(r.minkowski_gap.has_value());
    CHECK(*r.minkowski_gap <= 1e-12);
  }
}

TEST_CASE("minkowski sums over tagged partitions") {
  const IvFunction h(GroundFunction::finite({1, 2}), GroundFunction::finite({2, 4}));
  const IvSetFunction gamma = singles({0.5, 0.25}, {1.0, 0.5});
  const Partition trivial = Partition::trivial(GroundSpace::finite(2));
  const Interval v = minkowski_sum(h, gamma, TaggedPartition(trivial, {1}));
  CHECK(v == Interval(1.5, 6.0));
}

TEST_CASE("multisubmeasures") {
  testgen::Rng rng(203);
  for (int iter = 0; iter < 50; ++iter) {
    const int n = gen::uniform_int(rng, 1, 5);
    CHECK(is_multisubmeasure(gen::iv_submeasure(rng, n)));
  }
  CHECK_FALSE(is_multisubmeasure(IvSetFunction(SetFunction::table(2, {0, 1, 1, 0.5}),
                                               SetFunction::table(2, {0, 1, 1, 2}))));
}

TEST_CASE("indefinite interval integral is finitely additive") {
  testgen::Rng rng(205);
  for (int iter = 0; iter < 100; ++iter) {
    const int n = gen::uniform_int(rng, 1, 5);
    const IvSetFunction gamma = gen::iv_table(rng, n);
    const IvFunction h = gen::iv_function(rng, n, 2.0);
    const IvIndefiniteReport r = iv_indefinite(h, gamma);
    CHECK(r.finitely_additive);
    CHECK(r.max_additivity_gap <= 1e-12);
    CHECK(r.norm_s == doctest::Approx(r.norm_expected).epsilon(1e-12));
    if (r.gamma_monotone) CHECK(r.monotone == std::optional<bool>(true));
  }
}

TEST_CASE("monotonicity suite has no violations on submeasures") {
  testgen::Rng rng(207);
  for (int iter = 0; iter < 100; ++iter) {
    const int n = gen::uniform_int(rng, 1, 5);
    const IvSetFunction gamma = gen::iv_submeasure(rng, n);
    const IvSetFunction gamma1 = gen::iv_submeasure(rng, n);
    const IvSetFunction gamma2 = iv_sum(gamma1, gen::iv_submeasure(rng, n));
    const IvSuiteReport r = iv_monotonicity_suite(gen::iv_function(rng, n, 2.0), gen::iv_function(rng, n, 2.0),
                                                  gamma, gamma1, gamma2, gen::uniform(rng, 0.0, 3.0));
    CHECK_FALSE(r.checks.empty());
    for (const auto& c : r.checks) CHECK_MESSAGE(c.violations == 0, c.name);
    CHECK(r.violations() == 0);
  }
}

TEST_CASE("integral over an atom") {
  const AtomIntegral a = iv_atom_integral(atom_h(), atom_gamma(), 0b011);
  CHECK(a.point == 1u);
  CHECK(a.value == Interval(1, 6));
  CHECK(a.integral == a.value);
  CHECK(a.matches_integral);

  CHECK_THROWS_AS(iv_atom_integral(atom_h(), atom_gamma(), 0b110), NotAnAtom);
  const IvSetFunction spread(SetFunction::table(2, {0, 0, 0, 1}), SetFunction::table(2, {0, 0, 0, 1}));
  CHECK_THROWS_AS(iv_atom_integral(IvFunction(GroundFunction::finite({1, 1}), GroundFunction::finite({1, 1})),
                                   spread, 0b11),
                  NoSinglePoint);
}

TEST_CASE("atom convergence bound") {
  std::vector<IvFunction> hn;
  for (int k = 1; k <= 30; ++k) {
    const double r = std::ldexp(1.0, -k);
    hn.emplace_back(GroundFunction::finite({5 + r, 1 + r, 2 + r}), GroundFunction::finite({7 + r, 3 + 2 * r, 2 + r}));
  }
  const auto steps = atom_convergence(hn, atom_h(), atom_gamma(), 0b011);
  REQUIRE(steps.size() == 30);
  for (const auto& s : steps) CHECK(s.holds);
  CHECK(steps.back().distance <= 1e-8);
  for (std::size_t i = 1; i < steps.size(); ++i) CHECK(steps[i].distance <= steps[i - 1].distance);
}
