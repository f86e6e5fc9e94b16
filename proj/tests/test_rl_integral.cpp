#include <doctest.h>

#include <cmath>

#include "nonadd/error.hpp"
#include "nonadd/rl_integral.hpp"
#include "support/generators.hpp"
#include "support/invariants.hpp"
#include "support/oracles.hpp"

using namespace nonadd;

TEST_CASE("finite RL integral equals the singleton sum") {
  testgen::Rng rng(101);
  for (int iter = 0; iter < 300; ++iter) {
    const int n = gen::uniform_int(rng, 1, 8);
    const SetFunction nu = gen::table(rng, n);
    const GroundFunction f = gen::function(rng, n, -2.0, 2.0);
    const Mask e = testgen::mask(rng, n);
    const double want = oracle::singleton_sum(f, nu, e);
    const IntegralReport r = rl_integrate(f, nu, e);
    CHECK(r.status == IntegralStatus::Exact);
    CHECK(std::abs(r.value - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    const double full = rl_value(f, nu);
    CHECK(gould_integrate(f, nu).value == full);
    CHECK(birkhoff_simple_integrate(f, nu).value == full);
  }
}

TEST_CASE("tag sums bracket every tagged sum and shrink under refinement") {
  testgen::Rng rng(103);
  for (int iter = 0; iter < 50; ++iter) {
    const int n = gen::uniform_int(rng, 1, 4);
    const SetFunction nu = gen::table(rng, n);
    const GroundFunction f = gen::function(rng, n, -2.0, 2.0);
    for (const auto& p : all_partitions(GroundSpace::finite(n))) {
      const SumRange range = tag_sum_range(f, nu, p);
      const double t = tagged_sum(f, nu, tag_with_minima(p));
      CHECK(t >= range.lo - 1e-12);
      CHECK(t <= range.hi + 1e-12);
    }
    const SumRange fine = tag_sum_range(f, nu, Partition::singletons(GroundSpace::finite(n)));
    CHECK(fine.width() == 0.0);
    CHECK(fine.lo == doctest::Approx(rl_value(f, nu)).epsilon(1e-12));
  }
}

TEST_CASE("structural identities") {
  testgen::Rng rng(107);
  for (int iter = 0; iter < 300; ++iter) {
    for (const auto& o : invariants::rl_case(rng)) {
      CHECK_MESSAGE(o.excess <= 1e-12, o.name << " excess " << o.excess);
    }
  }
}

TEST_CASE("examples") {
  const auto s3 = GroundSpace::finite(3);
  const SetFunction nu = SetFunction::table(2, {0.0, 0.5, 0.25, 2.0});
  CHECK(rl_value(GroundFunction::finite({1.0, 4.0}), nu) == 1.5);
  gen::Rng rng(1);
  CHECK(rl_value(GroundFunction::constant(s3, 0.0), gen::table(rng, 3)) == 0.0);
  // chi_E integrates to the singleton sum, not to nu(E)
  const GroundFunction chi = GroundFunction::indicator(GroundSpace::finite(2), Mask{3});
  CHECK(rl_value(chi, nu) == 0.75);
  CHECK(nu(Mask{3}) == 2.0);
}

TEST_CASE("integrals on nat") {
  const auto nat = GroundSpace::nat();
  const SetFunction geo = SetFunction::additive(GroundFunction::nat(NatFunction::geometric(1.0, 0.5)));
  const GroundFunction half = GroundFunction::nat(NatFunction::geometric(1.0, 0.5));
  IntegralReport r = rl_integrate(half, geo);
  CHECK(r.status == IntegralStatus::Exact);
  CHECK(r.value == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(rl_value(half, geo, EpSet::residue_class(1, 2)) == doctest::Approx(0.25 / (1 - 1.0 / 16)).epsilon(1e-14));

  const SetFunction ones = SetFunction::cardinality_rule(nat, 1.0, 1.0);
  r = rl_integrate(GroundFunction::constant(nat, 1.0), ones);
  CHECK_FALSE(r.integrable());
  CHECK_FALSE(r.partial_sums.empty());
  CHECK_THROWS_AS(rl_value(GroundFunction::constant(nat, 1.0), ones), SeriesDiverges);

  r = gould_integrate(GroundFunction::constant(nat, 3.0), geo);
  CHECK(r.status == IntegralStatus::Converged);
  CHECK(r.value == doctest::Approx(6.0).epsilon(1e-8));
}

TEST_CASE("counting rule: RL and Birkhoff vanish, Gould diverges") {
  const auto nat = GroundSpace::nat();
  const SetFunction nu = SetFunction::cardinality_rule(nat, 0.0, 1.0);
  const GroundFunction one = GroundFunction::constant(nat, 1.0);
  CHECK(rl_value(one, nu) == 0.0);
  CHECK(birkhoff_simple_integrate(one, nu).value == 0.0);

  GouldOptions opts;
  opts.budget = 10;
  const IntegralReport g = gould_integrate(one, nu, opts);
  CHECK(g.status == IntegralStatus::Diverged);
  REQUIRE(g.witness.size() == 10);
  for (std::size_t k = 1; k <= 10; ++k) {
    const auto& w = g.witness[k - 1];
    CHECK(w.partition.block_count() == k);
    CHECK(w.sums.lo == static_cast<double>(k));
    CHECK(w.sums.hi == static_cast<double>(k));
    for (const auto& b : w.partition.blocks()) CHECK_FALSE(std::get<EpSet>(b).is_finite());
    if (k > 1) CHECK(is_finer(w.partition, g.witness[k - 2].partition));
  }

  const ComparisonReport c = compare_integrals(one, nu, opts);
  CHECK_FALSE(c.agree);
  CHECK_FALSE(c.counterexample.empty());
}

TEST_CASE("small budgets give NotIntegrable with a note") {
  const auto nat = GroundSpace::nat();
  const SetFunction nu = SetFunction::cardinality_rule(nat, 0.0, 1.0);
  GouldOptions opts;
  opts.budget = 3;
  const IntegralReport g = gould_integrate(GroundFunction::constant(nat, 1.0), nu, opts);
  CHECK(g.status == IntegralStatus::NotIntegrable);
  CHECK(g.note.rfind("budget_exhausted", 0) == 0);
  opts.budget = 0;
  CHECK_THROWS_AS(gould_integrate(GroundFunction::constant(nat, 1.0), nu, opts), InvalidArgument);
}

TEST_CASE("indefinite integral") {
  testgen::Rng rng(109);
  for (int iter = 0; iter < 100; ++iter) {
    const int n = gen::uniform_int(rng, 1, 6);
    const SetFunction nu = gen::table(rng, n);
    const GroundFunction f = gen::function(rng, n, 0.0, 2.0);
    const SetFunction T = indefinite_integral(f, nu);
    for (Mask e = 0; e <= GroundSpace::finite(n).full_mask(); ++e)
      REQUIRE(T(e) == doctest::Approx(oracle::singleton_sum(f, nu, e)).epsilon(1e-12));
    CHECK(classify(T).finitely_additive.holds());
  }
  CHECK_THROWS_AS(indefinite_integral(GroundFunction::finite({-1.0}), SetFunction::table(1, {0, 1})),
                  InvalidArgument);
}
