#include <doctest.h>

#include <cmath>

#include "nonadd/analysis.hpp"
#include "nonadd/error.hpp"
#include "support/generators.hpp"

using namespace nonadd;

namespace {

SetFunction weights3() { return SetFunction::additive(GroundFunction::finite({0.2, 0.3, 0.5})); }

GeometricFamily geometric4(double spike = 0.0) {
  GeometricFamily fam{GroundFunction::finite({1, 2, 0.5, 1.5}), GroundFunction::finite({1, 1, 1, 1}), 0.5, spike,
                      std::nullopt};
  if (spike != 0.0) fam.spike_set = MeasurableSet{Mask{0b0100}};
  return fam;
}

}  // namespace

TEST_CASE("seminorm examples") {
  const SetFunction nu = weights3();
  CHECK(seminorm_p(GroundFunction::finite({1, 1, 1}), nu, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(seminorm_p(GroundFunction::finite({2, 0, 0}), nu, 1.0) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(seminorm_p(GroundFunction::finite({0, 0, 2}), nu, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS(seminorm_p(GroundFunction::finite({0, 1, 1}), nu, -1.0));
}

TEST_CASE("seminorm axioms") {
  testgen::Rng rng(301);
  for (int iter = 0; iter < 300; ++iter) {
    const int n = gen::uniform_int(rng, 1, 6);
    const SetFunction nu = gen::additive(rng, n);
    const GroundFunction f = gen::function(rng, n, -2.0, 2.0);
    const GroundFunction g = gen::function(rng, n, -2.0, 2.0);
    const double p = 1.0 + 3.0 * gen::unit(rng);
    const double a = gen::uniform(rng, -3.0, 3.0);
    const double nf = seminorm_p(f, nu, p);
    CHECK(seminorm_p(fn_scale(f, a), nu, p) == doctest::Approx(std::abs(a) * nf).epsilon(1e-12));
    CHECK(seminorm_p(fn_sum(f, g), nu, p) <= nf + seminorm_p(g, nu, p) + 1e-12);
  }
}

TEST_CASE("RL-integrability of set functions") {
  CHECK(is_rl_integrable_setfunction(weights3()).holds());
  const auto r = is_rl_integrable_setfunction(SetFunction::table(2, {0, 1, 1, 1}));
  CHECK(r.verdict == Verdict::Fails);
  REQUIRE(r.witness);
  CHECK(r.integral != r.value);
  CHECK(is_rl_integrable_setfunction(SetFunction::cardinality_rule(GroundSpace::nat(), 0.0, 1.0)).verdict ==
        Verdict::Fails);
}

TEST_CASE("inequality examples") {
  const SetFunction nu = weights3();
  const GroundFunction one = GroundFunction::finite({1, 1, 1});
  InequalityReport r = check_inequality(InequalityKind::Holder, one, one, nu, 2.0, 2.0);
  CHECK(r.holds);
  CHECK(r.applicable);
  CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-15));

  const GroundFunction g = GroundFunction::finite({1, 2, 3});
  const GroundFunction h = GroundFunction::finite({0.5, 1.5, 2});
  r = check_inequality(InequalityKind::Minkowski, g, h, nu, 3.0);
  CHECK(r.holds);
  CHECK(r.q == doctest::Approx(1.5).epsilon(1e-15));

  r = check_inequality(InequalityKind::ReverseHolder, g, h, nu, 0.5);
  CHECK(r.holds);
  CHECK(r.q == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(r.lhs >= r.rhs);

  CHECK_THROWS_AS(check_inequality(InequalityKind::Holder, g, h, nu, 2.0, 3.0), ConjugateMismatch);
  CHECK_THROWS_AS(check_inequality(InequalityKind::ReverseHolder, g, GroundFunction::finite({0, 1.5, 2}), nu, 0.5),
                  HypothesisViolated);

  // A non-integrable nu makes the check exploratory.
  r = check_inequality(InequalityKind::Holder, g, h, SetFunction::table(3, {0, 1, 1, 1, 1, 1, 1, 1}), 2.0);
  CHECK_FALSE(r.applicable);
}

TEST_CASE("inequalities hold on additive instances") {
  testgen::Rng rng(303);
  for (int iter = 0; iter < 200; ++iter) {
    const int n = gen::uniform_int(rng, 1, 6);
    const SetFunction nu = gen::additive(rng, n);
    const GroundFunction g = gen::function(rng, n, 0.05, 2.0);
    const GroundFunction h = gen::function(rng, n, 0.05, 2.0);
    for (double p : {1.5, 2.0, 3.0}) {
      CHECK(check_inequality(InequalityKind::Holder, g, h, nu, p, std::nullopt, 1e-10).holds);
      CHECK(check_inequality(InequalityKind::Minkowski, g, h, nu, p, std::nullopt, 1e-10).holds);
    }
    for (double p : {0.25, 0.5}) {
      CHECK(check_inequality(InequalityKind::ReverseHolder, g, h, nu, p, std::nullopt, 1e-10).holds);
      CHECK(check_inequality(InequalityKind::ReverseMinkowski, g, h, nu, p, std::nullopt, 1e-10).holds);
    }
  }
}

TEST_CASE("names round-trip") {
  for (auto k : {InequalityKind::Holder, InequalityKind::Minkowski, InequalityKind::ReverseHolder,
                 InequalityKind::ReverseMinkowski})
    CHECK(parse_inequality_kind(to_string(k)) == k);
  for (auto m : {ConvergenceMode::Uniform, ConvergenceMode::InMeasure, ConvergenceMode::AlmostEverywhere,
                 ConvergenceMode::PNorm, ConvergenceMode::Fatou, ConvergenceMode::Monotone,
                 ConvergenceMode::SetwiseVarying, ConvergenceMode::Atom})
    CHECK(parse_convergence_mode(to_string(m)) == m);
  CHECK_THROWS(parse_convergence_mode("sideways"));
}

TEST_CASE("scalar convergence modes on a geometric family") {
  gen::Rng rng(5);
  const SetFunction nu = gen::submeasure(rng, 4);
  for (auto mode : {ConvergenceMode::Uniform, ConvergenceMode::InMeasure, ConvergenceMode::AlmostEverywhere,
                    ConvergenceMode::PNorm}) {
    const ScalarConvergenceInput in{nu, geometric4(), std::nullopt, 2.0, 1e-3};
    const ConvergenceReport r = run_convergence(mode, in);
    CHECK_MESSAGE(r.verdict, to_string(mode));
    REQUIRE(r.distances.size() == 30);
    CHECK(r.distances.back() <= 1e-8);
  }
  const ScalarConvergenceInput spiked{nu, geometric4(1.0), std::nullopt, 2.0, 1e-3};
  CHECK_THROWS_AS(run_convergence(ConvergenceMode::Uniform, spiked), HypothesisViolated);
  CHECK_THROWS_AS(run_convergence(ConvergenceMode::PNorm, spiked), HypothesisViolated);
}

TEST_CASE("limit verdict") {
  CHECK(limit_verdict({1, 0.5, 0.25, 0.1, 0.01, 1e-9}, 1e-8));
  CHECK_FALSE(limit_verdict({1, 0.5, 0.25, 0.1, 0.01, 1e-7}, 1e-8));
  CHECK(limit_verdict({0, 0, 0, 0, 1e-9, 0}, 1e-8) == false);
  CHECK_FALSE(limit_verdict({1e-10, 1e-10, 1e-9, 1e-10, 1e-10, 1e-10}, 1e-8));
}

TEST_CASE("Fatou inequality") {
  testgen::Rng rng(307);
  for (int iter = 0; iter < 200; ++iter) {
    const int n = gen::uniform_int(rng, 1, 5);
    EventuallyPeriodicFamily fam;
    const int cycle = gen::uniform_int(rng, 1, 4);
    for (int i = 0; i < cycle; ++i) fam.cycle.push_back(gen::function(rng, n, 0.0, 3.0));
    const ScalarConvergenceInput in{gen::monotone(rng, n), std::nullopt, fam, 2.0, 1e-3};
    const ConvergenceReport r = run_convergence(ConvergenceMode::Fatou, in, {static_cast<std::size_t>(cycle), 1e-8});
    CHECK(r.verdict);
    CHECK(r.scalar_sides->first <= r.scalar_sides->second + 1e-12);
  }
}

TEST_CASE("interval modes") {
  gen::Rng rng(9);
  const IvSetFunction gamma = gen::iv_submeasure(rng, 4);
  const IvFunction base(GroundFunction::finite({1, 2, 0.5, 1.5}), GroundFunction::finite({2, 2, 1, 3}));
  const IvGeometricFamily fam{base, GroundFunction::finite({1, 1, 1, 1}), GroundFunction::finite({1, 2, 1, 1}), 0.5};
  for (auto mode : {ConvergenceMode::Uniform, ConvergenceMode::InMeasure, ConvergenceMode::AlmostEverywhere,
                    ConvergenceMode::SetwiseVarying}) {
    const IvConvergenceInput in{gamma, fam, {}, std::nullopt, 1e-3};
    const ConvergenceReport r = run_convergence(mode, in);
    CHECK_MESSAGE(r.verdict, to_string(mode));
    CHECK(r.distances.back() <= 1e-8);
  }

  // Monotone: the integral of the join is the join of the integrals.
  std::vector<IvFunction> up;
  for (int k = 0; k < 4; ++k) up.push_back(iv_scale(base, 1.0 + 0.25 * k));
  const ConvergenceReport m = run_convergence(ConvergenceMode::Monotone, IvConvergenceInput{gamma, std::nullopt, up, std::nullopt, 1e-3});
  CHECK(m.verdict);
  CHECK(m.interval_sides->first == m.interval_sides->second);
  std::reverse(up.begin(), up.end());
  CHECK_THROWS_AS(run_convergence(ConvergenceMode::Monotone, IvConvergenceInput{gamma, std::nullopt, up, std::nullopt, 1e-3}),
                  HypothesisViolated);
}

TEST_CASE("families index from one") {
  const GeometricFamily fam = geometric4();
  CHECK(fam.term(1).at(0) == 1.5);
  CHECK(fam.term(2).at(0) == 1.25);
  EventuallyPeriodicFamily p{{GroundFunction::finite({9})}, {GroundFunction::finite({1}), GroundFunction::finite({2})}};
  CHECK(p.term(1).at(0) == 9);
  CHECK(p.term(2).at(0) == 1);
  CHECK(p.term(3).at(0) == 2);
  CHECK(p.term(4).at(0) == 1);
}

TEST_CASE("runs are reproducible") {
  auto run = [] {
    gen::Rng rng(77);
    const SetFunction nu = gen::table(rng, 5);
    const GroundFunction f = gen::function(rng, 5, -1.0, 1.0);
    return rl_value(f, nu);
  };
  CHECK(run() == run());
}
