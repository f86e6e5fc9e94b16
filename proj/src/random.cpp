#include "nonadd/random.hpp"

#include <algorithm>
#include <vector>

namespace nonadd::gen {

double unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * unit(rng); }

int uniform_int(Rng& rng, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(rng() % span);
}

GroundFunction function(Rng& rng, int n, double lo, double hi) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = uniform(rng, lo, hi);
  return GroundFunction::finite(std::move(v));
}

GroundFunction sparse_function(Rng& rng, int n, double lo, double hi, double zero_p) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = unit(rng) < zero_p ? 0.0 : uniform(rng, lo, hi);
  return GroundFunction::finite(std::move(v));
}

SetFunction table(Rng& rng, int n, double hi) {
  std::vector<double> v(std::size_t{1} << n);
  for (std::size_t m = 1; m < v.size(); ++m) v[m] = uniform(rng, 0.0, hi);
  return SetFunction::table(n, std::move(v));
}

SetFunction additive(Rng& rng, int n, double hi) { return SetFunction::additive(function(rng, n, 0.0, hi)); }

SetFunction submeasure(Rng& rng, int n) {
  const int k = uniform_int(rng, 1, 3);
  std::vector<std::vector<double>> w(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(n)));
  for (auto& row : w)
    for (auto& x : row) x = uniform(rng, 0.0, 1.0);
  return SetFunction::tabulate(GroundSpace::finite(n), [w](Mask m) {
    double s = 0.0;
    for (const auto& row : w) {
      double best = 0.0;
      for (int i : mask_elements(m)) best = std::max(best, row[static_cast<std::size_t>(i)]);
      s += best;
    }
    return s;
  });
}

SetFunction monotone(Rng& rng, int n) {
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> mass(size, 0.0);
  const int k = uniform_int(rng, 1, 2 * n);
  for (int i = 0; i < k; ++i) {
    const auto m = static_cast<Mask>(1 + rng() % (size - 1));
    mass[m] += uniform(rng, 0.0, 1.0);
  }
  std::vector<double> v(size, 0.0);
  for (std::size_t a = 1; a < size; ++a) {
    for (Mask b = static_cast<Mask>(a);; b = (b - 1) & static_cast<Mask>(a)) {
      v[a] += mass[b];
      if (b == 0) break;
    }
  }
  return SetFunction::table(n, std::move(v));
}

IvSetFunction iv_table(Rng& rng, int n) {
  SetFunction nu1 = table(rng, n);
  SetFunction extra = table(rng, n, 0.5);
  return IvSetFunction(nu1, SetFunction::sum({nu1, extra}));
}

IvSetFunction iv_submeasure(Rng& rng, int n) {
  SetFunction nu1 = submeasure(rng, n);
  SetFunction extra = submeasure(rng, n);
  return IvSetFunction(nu1, SetFunction::sum({nu1, SetFunction::scaled(0.5, extra)}));
}

IvFunction iv_function(Rng& rng, int n, double hi) {
  std::vector<double> lo(static_cast<std::size_t>(n));
  std::vector<double> up(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] = uniform(rng, 0.0, hi);
    up[i] = lo[i] + uniform(rng, 0.0, hi);
  }
  return IvFunction(GroundFunction::finite(std::move(lo)), GroundFunction::finite(std::move(up)));
}

}  // namespace nonadd::gen
