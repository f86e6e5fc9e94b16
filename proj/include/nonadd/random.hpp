#pragma once

#include <cstdint>
#include <random>

#include "nonadd/function.hpp"
#include "nonadd/iv_integral.hpp"
#include "nonadd/setfunc.hpp"

/// Seeded instance generators for property checks. Values are derived from the
/// raw engine output, so a seed gives the same instances on every platform.
namespace nonadd::gen {

using Rng = std::mt19937_64;

double unit(Rng& rng);
double uniform(Rng& rng, double lo, double hi);
int uniform_int(Rng& rng, int lo, int hi);

GroundFunction function(Rng& rng, int n, double lo, double hi);
/// Values in [lo, hi]; zero with probability `zero_p`.
GroundFunction sparse_function(Rng& rng, int n, double lo, double hi, double zero_p);

/// Arbitrary nonnegative table with nu(empty) = 0.
SetFunction table(Rng& rng, int n, double hi = 1.0);
SetFunction additive(Rng& rng, int n, double hi = 1.0);
/// Nonnegative combination of sup-measures A -> max over A of w: monotone and subadditive.
SetFunction submeasure(Rng& rng, int n);
/// Nonnegative Moebius masses on random subsets: monotone and superadditive.
SetFunction monotone(Rng& rng, int n);

/// Gamma = [nu1, nu1 + extra] with both endpoints arbitrary tables.
IvSetFunction iv_table(Rng& rng, int n);
/// Both endpoints submeasures.
IvSetFunction iv_submeasure(Rng& rng, int n);
IvFunction iv_function(Rng& rng, int n, double hi);

}  // namespace nonadd::gen
