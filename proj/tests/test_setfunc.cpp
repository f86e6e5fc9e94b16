#include <doctest.h>

#include <cmath>

#include "nonadd/error.hpp"
#include "nonadd/setfunc.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace nonadd;

namespace {

// nu({0}) = nu({1}) = 1, nu(S) = 0.5
SetFunction non_monotone() { return SetFunction::table(2, {0.0, 1.0, 1.0, 0.5}); }

}  // namespace

TEST_CASE("evaluate") {
  const auto card = SetFunction::cardinality_rule(GroundSpace::nat(), 0.0, 1.0);
  CHECK(card(EpSet::residue_class(0, 2)) == 1.0);
  CHECK(card(EpSet::of({1, 2, 3})) == 0.0);
  CHECK(card(EpSet::empty()) == 0.0);
  const auto add = SetFunction::additive(GroundFunction::finite({1, 2, 3}));
  CHECK(add(Mask{0b101}) == 4.0);
  CHECK(add(Mask{0}) == 0.0);
  const auto dist = SetFunction::distortion(Distortion::power(2.0), GroundFunction::finite({0.5, 0.25, 0.25}));
  CHECK(dist(Mask{0b011}) == 0.5625);
  CHECK(SetFunction::scaled(2.0, add)(Mask{1}) == 2.0);
  CHECK(SetFunction::sum({add, add})(Mask{0b110}) == 10.0);
  CHECK_THROWS_AS(card(Mask{1}), NotInAlgebra);
}

TEST_CASE("construction validates") {
  CHECK_THROWS_AS(SetFunction::table(2, {0.1, 1, 1, 1}), InvalidArgument);
  CHECK_THROWS_AS(SetFunction::table(2, {0, -1, 1, 1}), InvalidArgument);
  CHECK_THROWS_AS(SetFunction::table(2, {0, 1, 1}), InvalidArgument);
  CHECK_THROWS_AS(SetFunction::table(2, {0, INFINITY, 1, 1}), InvalidArgument);
  CHECK_THROWS_AS(SetFunction::additive(GroundFunction::finite({1, -1})), InvalidArgument);
  CHECK_THROWS_AS(SetFunction::additive(GroundFunction::nat(NatFunction::constant(1.0))), InvalidArgument);
  CHECK_THROWS_AS(SetFunction::cardinality_rule(GroundSpace::nat(), -1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(Distortion::power(0.0), InvalidArgument);
}

TEST_CASE("classify known examples") {
  const auto add = SetFunction::additive(GroundFunction::finite({1, 2, 3}));
  PropertyReport r = classify(add);
  CHECK(r.finitely_additive.holds());
  CHECK(r.monotone.holds());
  CHECK(r.is_submeasure());

  r = classify(non_monotone());
  CHECK(r.monotone.verdict == Verdict::Fails);
  REQUIRE(r.monotone.witness);
  const auto& w = r.monotone.witness->sets;
  REQUIRE(w.size() == 2);
  CHECK(is_subset(w[0], w[1]));
  CHECK(non_monotone()(w[0]) > non_monotone()(w[1]));

  const auto card = SetFunction::cardinality_rule(GroundSpace::nat(), 0.0, 1.0);
  r = classify(card);
  CHECK(r.monotone.holds());
  CHECK(r.subadditive.holds());
  CHECK(r.o_continuous.verdict == Verdict::Fails);
  CHECK(r.o_continuous.witness.has_value());
}

TEST_CASE("every Fails witness re-evaluates as a violation") {
  testgen::Rng rng(17);
  for (int iter = 0; iter < 200; ++iter) {
    const int n = gen::uniform_int(rng, 1, 5);
    const SetFunction nu = gen::table(rng, n);
    const PropertyReport r = classify(nu);
    if (r.monotone.verdict == Verdict::Fails) {
      const auto& s = r.monotone.witness->sets;
      CHECK(is_subset(s[0], s[1]));
      CHECK(nu(s[0]) > nu(s[1]));
    }
    if (r.subadditive.verdict == Verdict::Fails) {
      const auto& s = r.subadditive.witness->sets;
      CHECK(is_empty(set_intersection(s[0], s[1])));
      CHECK(nu(set_union(s[0], s[1])) > nu(s[0]) + nu(s[1]));
    }
    if (r.finitely_additive.verdict == Verdict::Fails) {
      const auto& s = r.finitely_additive.witness->sets;
      CHECK(is_empty(set_intersection(s[0], s[1])));
      CHECK(nu(set_union(s[0], s[1])) != doctest::Approx(nu(s[0]) + nu(s[1])));
    }
    CHECK(r.monotone.holds() == oracle::monotone(nu));
  }
}

TEST_CASE("variation examples") {
  CHECK(variation(non_monotone(), Mask{3}) == 2.0);
  CHECK(semivariation(non_monotone(), Mask{3}) == 2.0);
  CHECK(variation(SetFunction::table(2, {0, 0, 0, 0}), Mask{3}) == 0.0);
  CHECK(semivariation(non_monotone(), Mask{0}) == 0.0);
  const auto add = SetFunction::additive(GroundFunction::finite({1, 2, 3}));
  for (Mask m = 0; m < 8; ++m) CHECK(variation(add, m) == doctest::Approx(add(m)).epsilon(1e-15));

  const auto card = SetFunction::cardinality_rule(GroundSpace::nat(), 0.5, 1.0);
  CHECK(variation(card, EpSet::of({1, 2, 3})) == 1.5);
  CHECK(std::isinf(variation(card, EpSet::all())));
}

TEST_CASE("variation DP equals brute force") {
  testgen::Rng rng(23);
  for (int iter = 0; iter < 200; ++iter) {
    const int n = gen::uniform_int(rng, 1, 5);
    const SetFunction nu = gen::table(rng, n);
    const Mask e = testgen::mask(rng, n);
    CHECK(variation(nu, e) == oracle::variation(nu, e));
  }
}

TEST_CASE("variation structure") {
  testgen::Rng rng(29);
  for (int iter = 0; iter < 200; ++iter) {
    const int n = gen::uniform_int(rng, 1, 8);
    const SetFunction nu = gen::table(rng, n);
    const Mask a = testgen::mask(rng, n);
    const Mask b = testgen::mask(rng, n) & ~a;
    // superadditive over disjoint unions
    CHECK(variation(nu, a | b) >= variation(nu, a) + variation(nu, b) - 1e-12);
    // monotone
    CHECK(variation(nu, a | b) >= variation(nu, a) - 1e-12);
    // positive homogeneity and subadditivity in nu
    const SetFunction nu2 = gen::table(rng, n);
    CHECK(variation(SetFunction::scaled(2.5, nu), a) == doctest::Approx(2.5 * variation(nu, a)).epsilon(1e-12));
    CHECK(variation(SetFunction::sum({nu, nu2}), a) <= variation(nu, a) + variation(nu2, a) + 1e-12);

    // a subadditive nu has a finitely additive variation
    const SetFunction sub = gen::submeasure(rng, n);
    CHECK(variation(sub, a | b) == doctest::Approx(variation(sub, a) + variation(sub, b)).epsilon(1e-12));
  }
}

TEST_CASE("atoms") {
  const auto space = GroundSpace::finite(3);
  const auto at0 = SetFunction::tabulate(space, [](Mask m) { return (m & 1u) ? 1.0 : 0.0; });
  const auto atoms = find_atoms(at0);
  CHECK(atoms == std::vector<Mask>{0b001, 0b011, 0b101, 0b111});
  const auto add = SetFunction::additive(GroundFunction::finite({1, 2, 3}));
  CHECK(find_atoms(add) == std::vector<Mask>{0b001, 0b010, 0b100});
  CHECK(find_atoms(SetFunction::table(2, {0, 0, 0, 0})).empty());
  Mask split = 0;
  CHECK_FALSE(is_atom(add, 0b011, &split));
  CHECK((split == 0b001 || split == 0b010));
}

TEST_CASE("variation distance") {
  testgen::Rng rng(31);
  for (int iter = 0; iter < 100; ++iter) {
    const int n = gen::uniform_int(rng, 1, 5);
    const GroundFunction w1 = gen::function(rng, n, 0.0, 1.0);
    const GroundFunction w2 = gen::function(rng, n, 0.0, 1.0);
    const auto a = SetFunction::additive(w1);
    const auto b = SetFunction::additive(w2);
    const Mask e = testgen::mask(rng, n);
    double expect = 0.0;
    for (int i : mask_elements(e)) expect += std::abs(w1.at(i) - w2.at(i));
    CHECK(variation_distance(a, b, e) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(variation_distance(a, a, e) == 0.0);
    CHECK(variation_distance(a, SetFunction::scaled(0.75, a), e) == doctest::Approx(0.25 * a(e)).epsilon(1e-12));
  }
}

TEST_CASE("singleton profile on nat") {
  const auto add = SetFunction::additive(GroundFunction::nat(NatFunction::geometric(1.0, 0.5)));
  CHECK(singleton_value(add, 3) == 0.125);
  const auto card = SetFunction::cardinality_rule(GroundSpace::nat(), 0.25, 1.0);
  CHECK(singleton_value(card, 7) == 0.25);
  const auto dist = SetFunction::distortion(Distortion::power(2.0), GroundFunction::nat(NatFunction::geometric(1.0, 0.5)));
  CHECK(singleton_value(dist, 2) == 0.0625);
}
