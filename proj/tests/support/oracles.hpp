#pragma once

// Reference computations written without the library's algorithms.

#include <algorithm>
#include <functional>
#include <vector>

#include "nonadd/function.hpp"
#include "nonadd/iv_integral.hpp"
#include "nonadd/setfunc.hpp"

namespace oracle {

using nonadd::Mask;

/// Every partition of the points of `e`, as lists of blocks.
inline void for_each_partition(Mask e, const std::function<void(const std::vector<Mask>&)>& visit) {
  std::vector<int> pts;
  for (int i = 0; i < 32; ++i)
    if (e >> i & 1u) pts.push_back(i);
  std::vector<Mask> blocks;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == pts.size()) {
      visit(blocks);
      return;
    }
    const Mask bit = Mask{1} << pts[k];
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      blocks[i] |= bit;
      rec(k + 1);
      blocks[i] &= ~bit;
    }
    blocks.push_back(bit);
    rec(k + 1);
    blocks.pop_back();
  };
  rec(0);
}

/// sup of sum nu(A_i) over disjoint families inside E. With nu >= 0 the
/// supremum is attained on a partition of E. Blocks arrive ordered by their
/// smallest point and are summed from the last one back, the association the
/// library's DP uses, so the two agree bit for bit.
inline double variation(const nonadd::SetFunction& nu, Mask e) {
  double best = 0.0;
  for_each_partition(e, [&](const std::vector<Mask>& blocks) {
    double s = 0.0;
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) s = nu(*it) + s;
    best = std::max(best, s);
  });
  return best;
}

inline std::size_t bell(int n) {
  std::size_t count = 0;
  for_each_partition(n == 0 ? 0 : (Mask{1} << n) - 1, [&](const std::vector<Mask>&) { ++count; });
  return count;
}

/// sum over s in E of f(s) nu({s}).
inline double singleton_sum(const nonadd::GroundFunction& f, const nonadd::SetFunction& nu, Mask e) {
  double s = 0.0;
  for (int i = 0; i < f.space().size(); ++i)
    if (e >> i & 1u) s += f.at(static_cast<std::uint64_t>(i)) * nu(Mask{1} << i);
  return s;
}

/// Minkowski sum of H(s) * Gamma({s}) over the points of E, in interval arithmetic.
inline std::pair<double, double> minkowski(const nonadd::IvFunction& h, const nonadd::IvSetFunction& gamma, Mask e) {
  double lo = 0.0;
  double hi = 0.0;
  for (int i = 0; i < h.space().size(); ++i) {
    if (!(e >> i & 1u)) continue;
    const Mask s = Mask{1} << i;
    const double a = h.h1().at(static_cast<std::uint64_t>(i));
    const double b = h.h2().at(static_cast<std::uint64_t>(i));
    const double c = gamma.nu1()(s);
    const double d = gamma.nu2()(s);
    // [a, b] * [c, d] with nonnegative endpoints.
    const double products[] = {a * c, a * d, b * c, b * d};
    lo += *std::min_element(std::begin(products), std::end(products));
    hi += *std::max_element(std::begin(products), std::end(products));
  }
  return {lo, hi};
}

/// Exhaustive check that no mask pair violates nu(A) <= nu(B) for A subset of B.
inline bool monotone(const nonadd::SetFunction& nu) {
  const Mask full = nu.space().full_mask();
  for (Mask b = 0;; ++b) {
    for (Mask a = b;; a = (a - 1) & b) {
      if (nu(a) > nu(b) + 1e-12) return false;
      if (a == 0) break;
    }
    if (b == full) break;
  }
  return true;
}

}  // namespace oracle
