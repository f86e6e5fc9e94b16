#pragma once

// Structural identities of the RL integral, checked on one random instance.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nonadd/random.hpp"
#include "nonadd/rl_integral.hpp"

namespace invariants {

using namespace nonadd;

struct Outcome {
  std::string name;
  double excess = 0.0;
};

inline double rel(double x) { return std::max(1.0, std::abs(x)); }

/// Each entry is (identity, excess relative to max(1, |value|)); an identity
/// holds when its excess is at most the caller's tolerance.
inline std::vector<Outcome> rl_case(gen::Rng& rng) {
  const int n = gen::uniform_int(rng, 1, 8);
  const auto space = GroundSpace::finite(n);
  const SetFunction nu = gen::table(rng, n);
  const SetFunction mu = gen::table(rng, n);
  const GroundFunction f = gen::function(rng, n, -2.0, 2.0);
  const GroundFunction g = gen::function(rng, n, -2.0, 2.0);
  const double a = gen::uniform(rng, -3.0, 3.0);
  const double b = gen::uniform(rng, -3.0, 3.0);
  const double c = gen::uniform(rng, 0.0, 3.0);
  const Mask e = static_cast<Mask>(rng() & space.full_mask());
  const Mask e2 = static_cast<Mask>(rng() & space.full_mask()) & ~e;

  std::vector<Outcome> out;
  const double If = rl_value(f, nu);
  const double Ig = rl_value(g, nu);

  const double lin = rl_value(fn_linear(a, f, b, g), nu);
  out.push_back({"linearity", std::abs(lin - (a * If + b * Ig)) / rel(lin)});

  const double add_m = rl_value(f, SetFunction::sum({nu, mu}));
  const double sum_m = If + rl_value(f, mu);
  out.push_back({"measure_additivity", std::abs(add_m - sum_m) / rel(add_m)});

  const double hom = rl_value(f, SetFunction::scaled(c, nu));
  out.push_back({"measure_homogeneity", std::abs(hom - c * If) / rel(hom)});

  const double bound = f.sup_abs() * variation(nu, space.full_mask());
  out.push_back({"sup_bound", std::max(0.0, std::abs(If) - bound) / rel(bound)});

  const GroundFunction upper = fn_max(f, g);
  const double Iu = rl_value(upper, nu);
  out.push_back({"monotonicity", std::max(0.0, If - Iu) / rel(Iu)});

  const double restricted = rl_value(f, nu, e);
  const double via_chi = rl_value(fn_product(f, GroundFunction::indicator(space, e)), nu);
  out.push_back({"restriction", std::abs(restricted - via_chi) / rel(restricted)});

  const GroundFunction fp = fn_abs_pow(f, 1.0);
  const SetFunction T = indefinite_integral(fp, nu);
  const double t_union = T(e | e2);
  out.push_back({"indefinite_additivity", std::abs(t_union - (T(e) + T(e2))) / rel(t_union)});

  const SetFunction mono = gen::monotone(rng, n);
  const SetFunction Tm = indefinite_integral(fp, mono);
  out.push_back({"indefinite_monotonicity", std::max(0.0, Tm(e) - Tm(e | e2)) / rel(Tm(e | e2))});
  return out;
}

}  // namespace invariants
