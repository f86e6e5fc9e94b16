#pragma once

#include <cstdint>
#include <vector>

#include "nonadd/ground.hpp"
#include "nonadd/random.hpp"

namespace testgen {

using nonadd::gen::Rng;

inline nonadd::Mask mask(Rng& rng, int n) { return static_cast<nonadd::Mask>(rng() & ((1u << n) - 1u)); }

/// Random eventually periodic subset of nat with short prefix and period.
inline nonadd::EpSet ep_set(Rng& rng) {
  const int pre = nonadd::gen::uniform_int(rng, 0, 4);
  const int per = nonadd::gen::uniform_int(rng, 1, 6);
  std::vector<bool> prefix(static_cast<std::size_t>(pre));
  std::vector<bool> period(static_cast<std::size_t>(per));
  for (std::size_t i = 0; i < prefix.size(); ++i) prefix[i] = rng() & 1u;
  for (std::size_t i = 0; i < period.size(); ++i) period[i] = rng() & 1u;
  return nonadd::EpSet(prefix, period);
}

/// Dyadic values keep sums exact, so identities can be checked with ==.
inline double dyadic(Rng& rng, int lo, int hi) {
  return static_cast<double>(nonadd::gen::uniform_int(rng, lo * 8, hi * 8)) / 8.0;
}

}  // namespace testgen
