#include "nonadd/function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nonadd/error.hpp"

namespace nonadd {

namespace {

void check_term(const GeoTerm& t) {
  if (!std::isfinite(t.coef)) throw InvalidArgument("geometric term coefficient must be finite");
  if (!(t.ratio > 0.0 && t.ratio <= 1.0)) {
    throw InvalidArgument("geometric term ratio must lie in (0, 1], got " + std::to_string(t.ratio));
  }
}

double term_value(const GeoTerm& t, std::uint64_t n) {
  if (t.ratio == 1.0) return t.coef;
  return t.coef * std::pow(t.ratio, static_cast<double>(n));
}

double class_value(const std::vector<GeoTerm>& terms, std::uint64_t n) {
  double v = 0.0;
  for (const auto& t : terms) v += term_value(t, n);
  return v;
}

// Sorted by descending ratio, equal ratios merged, zero coefficients dropped.
void normalize_terms(std::vector<GeoTerm>& terms) {
  for (const auto& t : terms) check_term(t);
  std::sort(terms.begin(), terms.end(),
            [](const GeoTerm& a, const GeoTerm& b) { return a.ratio > b.ratio; });
  std::vector<GeoTerm> merged;
  for (const auto& t : terms) {
    if (!merged.empty() && merged.back().ratio == t.ratio) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const GeoTerm& t) { return t.coef == 0.0; });
  terms = std::move(merged);
}

bool is_integer_power(double p) { return p >= 1.0 && p <= 8.0 && std::floor(p) == p; }

std::vector<GeoTerm> multiply_terms(const std::vector<GeoTerm>& a, const std::vector<GeoTerm>& b) {
  std::vector<GeoTerm> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back({x.coef * y.coef, x.ratio * y.ratio});
  normalize_terms(out);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// NatFunction

NatFunction::NatFunction() : classes_(1) {}

NatFunction::NatFunction(std::vector<double> prefix, std::vector<std::vector<GeoTerm>> classes)
    : prefix_(std::move(prefix)), classes_(std::move(classes)) {
  if (classes_.empty()) throw InvalidArgument("NatFunction needs at least one tail class");
  for (double v : prefix_)
    if (!std::isfinite(v)) throw InvalidArgument("NatFunction prefix values must be finite");
  normalize();
}

NatFunction NatFunction::constant(double c) { return NatFunction({}, {{GeoTerm{c, 1.0}}}); }

NatFunction NatFunction::geometric(double coef, double ratio) {
  return NatFunction({}, {{GeoTerm{coef, ratio}}});
}

void NatFunction::normalize() {
  for (auto& cls : classes_) normalize_terms(cls);
  // Shortest period that reproduces the classes.
  const std::size_t p = classes_.size();
  for (std::size_t q = 1; q < p; ++q) {
    if (p % q != 0) continue;
    bool ok = true;
    for (std::size_t i = q; i < p && ok; ++i) ok = classes_[i] == classes_[i % q];
    if (ok) {
      classes_.resize(q);
      break;
    }
  }
  // Absorb trailing prefix values that the tail already reproduces exactly.
  while (!prefix_.empty()) {
    const std::uint64_t n = prefix_.size() - 1;
    const auto& prev = classes_.back();
    if (class_value(prev, n) != prefix_.back()) break;
    std::rotate(classes_.rbegin(), classes_.rbegin() + 1, classes_.rend());
    prefix_.pop_back();
  }
}

const std::vector<GeoTerm>& NatFunction::terms_at(std::uint64_t n) const {
  return classes_[(n - prefix_.size()) % classes_.size()];
}

double NatFunction::at(std::uint64_t n) const {
  if (n < prefix_.size()) return prefix_[n];
  return class_value(terms_at(n), n);
}

NatFunction NatFunction::aligned(std::size_t len, std::size_t per) const {
  len = std::max(len, prefix_.size());
  const std::size_t p = lcm_checked(per, classes_.size());
  NatFunction out;
  out.prefix_.resize(len);
  for (std::size_t n = 0; n < len; ++n) out.prefix_[n] = at(n);
  out.classes_.resize(p);
  for (std::size_t i = 0; i < p; ++i) out.classes_[i] = terms_at(len + i);
  return out;  // deliberately not normalized: callers index classes positionally
}

namespace {

template <class ClassFn, class PrefixFn>
NatFunction zip(const NatFunction& a, const NatFunction& b, PrefixFn pf, ClassFn cf) {
  const std::size_t len = std::max(a.prefix_length(), b.prefix_length());
  const std::size_t per = lcm_checked(a.period(), b.period());
  const NatFunction x = a.aligned(len, per);
  const NatFunction y = b.aligned(len, per);
  std::vector<double> prefix(len);
  for (std::size_t n = 0; n < len; ++n) prefix[n] = pf(x.prefix()[n], y.prefix()[n]);
  std::vector<std::vector<GeoTerm>> classes(per);
  for (std::size_t i = 0; i < per; ++i) classes[i] = cf(x.classes()[i], y.classes()[i]);
  return NatFunction(std::move(prefix), std::move(classes));
}

}  // namespace

NatFunction nat_sum(const NatFunction& a, const NatFunction& b) {
  return zip(
      a, b, [](double u, double v) { return u + v; },
      [](const std::vector<GeoTerm>& u, const std::vector<GeoTerm>& v) {
        std::vector<GeoTerm> out(u);
        out.insert(out.end(), v.begin(), v.end());
        return out;
      });
}

NatFunction nat_product(const NatFunction& a, const NatFunction& b) {
  return zip(a, b, [](double u, double v) { return u * v; }, multiply_terms);
}

NatFunction nat_scale(const NatFunction& a, double alpha) {
  if (!std::isfinite(alpha)) throw InvalidArgument("scale factor must be finite");
  std::vector<double> prefix(a.prefix());
  for (double& v : prefix) v *= alpha;
  auto classes = a.classes();
  for (auto& cls : classes)
    for (auto& t : cls) t.coef *= alpha;
  return NatFunction(std::move(prefix), std::move(classes));
}

NatFunction nat_abs_pow(const NatFunction& a, double p) {
  if (!(p != 0.0 && std::isfinite(p))) throw InvalidArgument("exponent must be finite and nonzero");
  std::vector<double> prefix(a.prefix());
  for (double& v : prefix) {
    if (p < 0.0 && v == 0.0) throw InvalidArgument("negative power of a function with zeros");
    v = std::pow(std::abs(v), p);
  }
  std::vector<std::vector<GeoTerm>> classes;
  classes.reserve(a.period());
  for (const auto& cls : a.classes()) {
    if (cls.empty()) {
      if (p < 0.0) throw InvalidArgument("negative power of a function with zeros");
      classes.emplace_back();
      continue;
    }
    if (cls.size() == 1) {
      const GeoTerm& t = cls.front();
      if (p < 0.0 && t.ratio < 1.0) {
        throw Unsupported("negative power of a decaying tail is unbounded");
      }
      classes.push_back({GeoTerm{std::pow(std::abs(t.coef), p), std::pow(t.ratio, p)}});
      continue;
    }
    const bool all_pos = std::all_of(cls.begin(), cls.end(), [](const GeoTerm& t) { return t.coef > 0; });
    const bool all_neg = std::all_of(cls.begin(), cls.end(), [](const GeoTerm& t) { return t.coef < 0; });
    if (!(all_pos || all_neg) || !is_integer_power(p)) {
      throw Unsupported("|f|^p has no closed form for a multi-term tail with mixed signs or non-integer p");
    }
    std::vector<GeoTerm> base(cls);
    if (all_neg)
      for (auto& t : base) t.coef = -t.coef;
    std::vector<GeoTerm> acc(base);
    for (int k = 1; k < static_cast<int>(p); ++k) acc = multiply_terms(acc, base);
    classes.push_back(std::move(acc));
  }
  return NatFunction(std::move(prefix), std::move(classes));
}

NatFunction nat_restrict(const NatFunction& a, const EpSet& set) {
  const std::size_t len = std::max(a.prefix_length(), set.prefix_length());
  const std::size_t per = lcm_checked(a.period(), set.period_length());
  const NatFunction x = a.aligned(len, per);
  std::vector<double> prefix(x.prefix());
  for (std::size_t n = 0; n < len; ++n)
    if (!set.contains(n)) prefix[n] = 0.0;
  auto classes = x.classes();
  for (std::size_t i = 0; i < per; ++i)
    if (!set.contains(len + i)) classes[i].clear();
  return NatFunction(std::move(prefix), std::move(classes));
}

SeriesSum nat_series(const NatFunction& f, const EpSet& set) {
  const std::size_t len = std::max(f.prefix_length(), set.prefix_length());
  const std::size_t per = lcm_checked(f.period(), set.period_length());
  const NatFunction x = f.aligned(len, per);
  SeriesSum out;
  for (std::size_t n = 0; n < len; ++n)
    if (set.contains(n)) out.value += x.prefix()[n];
  const double per_d = static_cast<double>(per);
  for (std::size_t i = 0; i < per; ++i) {
    const std::uint64_t n0 = len + i;
    if (!set.contains(n0)) continue;
    for (const auto& t : x.classes()[i]) {
      if (t.ratio == 1.0) {
        out.converges = false;
        continue;
      }
      // sum_k c r^(n0 + k per) = c r^n0 / (1 - r^per)
      const double denom = -std::expm1(per_d * std::log(t.ratio));
      out.value += t.coef * std::pow(t.ratio, static_cast<double>(n0)) / denom;
    }
  }
  if (!out.converges) {
    out.value = std::numeric_limits<double>::quiet_NaN();
    double partial = 0.0;
    std::uint64_t n = 0;
    for (std::uint64_t cut : {len + per, len + 10 * per, len + 100 * per, len + 1000 * per}) {
      if (cut > 2'000'000) break;
      for (; n < cut; ++n)
        if (set.contains(n)) partial += x.at(n);
      out.partial_sums.emplace_back(cut, partial);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Extrema

namespace {

struct ExtremaAcc {
  bool any = false;
  Extrema e;

  void add(double v, bool attained) {
    if (!any) {
      e = {v, v, attained, attained};
      any = true;
      return;
    }
    if (v < e.inf || (v == e.inf && attained)) {
      e.inf_attained = (v == e.inf) ? (e.inf_attained || attained) : attained;
      e.inf = v;
    }
    if (v > e.sup || (v == e.sup && attained)) {
      e.sup_attained = (v == e.sup) ? (e.sup_attained || attained) : attained;
      e.sup = v;
    }
  }
};

// Values of one residue class n0, n0 + per, n0 + 2 per, ...
void add_class_extrema(ExtremaAcc& acc, const std::vector<GeoTerm>& terms, std::uint64_t n0,
                       std::uint64_t per) {
  double limit = 0.0;
  std::vector<GeoTerm> decaying;
  for (const auto& t : terms) {
    if (t.ratio == 1.0) {
      limit += t.coef;
    } else {
      decaying.push_back(t);
    }
  }
  if (decaying.empty()) {
    acc.add(limit, true);
    return;
  }
  if (decaying.size() == 1) {
    // Monotone in k: extreme values are the first term and the limit.
    acc.add(limit + term_value(decaying.front(), n0), true);
    acc.add(limit, false);
    return;
  }
  const double scale = std::max(1.0, std::abs(limit));
  for (std::uint64_t k = 0; k < 100000; ++k) {
    const std::uint64_t n = n0 + k * per;
    double bound = 0.0;
    double v = limit;
    for (const auto& t : decaying) {
      const double tv = term_value(t, n);
      v += tv;
      bound += std::abs(tv);
    }
    acc.add(v, true);
    if (bound <= 1e-17 * scale) break;
  }
  acc.add(limit, false);
}

}  // namespace

Extrema ep_extrema_of(const NatFunction& f, const EpSet& set) {
  if (set.is_empty()) throw EmptySet("extrema over the empty set");
  const std::size_t len = std::max(f.prefix_length(), set.prefix_length());
  const std::size_t per = lcm_checked(f.period(), set.period_length());
  const NatFunction x = f.aligned(len, per);
  ExtremaAcc acc;
  for (std::size_t n = 0; n < len; ++n)
    if (set.contains(n)) acc.add(x.prefix()[n], true);
  for (std::size_t i = 0; i < per; ++i) {
    if (!set.contains(len + i)) continue;
    add_class_extrema(acc, x.classes()[i], len + i, per);
  }
  return acc.e;
}

// ---------------------------------------------------------------------------
// GroundFunction

GroundFunction GroundFunction::finite(std::vector<double> values) {
  const auto space = GroundSpace::finite(static_cast<int>(values.size()));
  for (double v : values)
    if (!std::isfinite(v)) throw InvalidArgument("function values must be finite");
  return GroundFunction(space, std::move(values));
}

GroundFunction GroundFunction::nat(NatFunction f) { return GroundFunction(GroundSpace::nat(), std::move(f)); }

GroundFunction GroundFunction::constant(const GroundSpace& space, double c) {
  if (space.is_finite()) return finite(std::vector<double>(space.size(), c));
  return nat(NatFunction::constant(c));
}

GroundFunction GroundFunction::indicator(const GroundSpace& space, const MeasurableSet& set) {
  check_in_algebra(space, set);
  return fn_restrict(constant(space, 1.0), set);
}

double GroundFunction::at(std::uint64_t s) const {
  if (const auto* v = std::get_if<std::vector<double>>(&repr_)) {
    if (s >= v->size()) throw InvalidArgument("point " + std::to_string(s) + " outside " + space_.to_string());
    return (*v)[s];
  }
  return std::get<NatFunction>(repr_).at(s);
}

const std::vector<double>& GroundFunction::values() const {
  if (const auto* v = std::get_if<std::vector<double>>(&repr_)) return *v;
  throw Unsupported("value table requested for a function on nat");
}

const NatFunction& GroundFunction::nat_repr() const {
  if (const auto* f = std::get_if<NatFunction>(&repr_)) return *f;
  throw Unsupported("closed-form tail requested for a function on a finite space");
}

double GroundFunction::sup_abs() const {
  if (const auto* v = std::get_if<std::vector<double>>(&repr_)) {
    double m = 0.0;
    for (double x : *v) m = std::max(m, std::abs(x));
    return m;
  }
  const Extrema e = ep_extrema_of(std::get<NatFunction>(repr_), EpSet::all());
  return std::max(std::abs(e.inf), std::abs(e.sup));
}

namespace {

void same_space(const GroundFunction& a, const GroundFunction& b) {
  if (!(a.space() == b.space())) {
    throw SpaceMismatch("functions on " + a.space().to_string() + " and " + b.space().to_string());
  }
}

template <class Op>
std::vector<double> zip_values(const std::vector<double>& a, const std::vector<double>& b, Op op) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i], b[i]);
  return out;
}

}  // namespace

GroundFunction fn_sum(const GroundFunction& a, const GroundFunction& b) {
  same_space(a, b);
  if (a.is_finite()) return GroundFunction::finite(zip_values(a.values(), b.values(), std::plus<>{}));
  return GroundFunction::nat(nat_sum(a.nat_repr(), b.nat_repr()));
}

GroundFunction fn_product(const GroundFunction& a, const GroundFunction& b) {
  same_space(a, b);
  if (a.is_finite()) return GroundFunction::finite(zip_values(a.values(), b.values(), std::multiplies<>{}));
  return GroundFunction::nat(nat_product(a.nat_repr(), b.nat_repr()));
}

GroundFunction fn_scale(const GroundFunction& a, double alpha) {
  if (a.is_finite()) {
    std::vector<double> v(a.values());
    for (double& x : v) x *= alpha;
    return GroundFunction::finite(std::move(v));
  }
  return GroundFunction::nat(nat_scale(a.nat_repr(), alpha));
}

GroundFunction fn_abs_pow(const GroundFunction& a, double p) {
  if (a.is_finite()) {
    if (!(p != 0.0 && std::isfinite(p))) throw InvalidArgument("exponent must be finite and nonzero");
    std::vector<double> v(a.values());
    for (double& x : v) {
      if (p < 0.0 && x == 0.0) throw InvalidArgument("negative power of a function with zeros");
      x = (p == 1.0) ? std::abs(x) : std::pow(std::abs(x), p);
    }
    return GroundFunction::finite(std::move(v));
  }
  return GroundFunction::nat(nat_abs_pow(a.nat_repr(), p));
}

GroundFunction fn_restrict(const GroundFunction& a, const MeasurableSet& set) {
  check_in_algebra(a.space(), set);
  if (a.is_finite()) {
    std::vector<double> v(a.values());
    const Mask m = std::get<Mask>(set);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (((m >> i) & 1u) == 0) v[i] = 0.0;
    return GroundFunction::finite(std::move(v));
  }
  return GroundFunction::nat(nat_restrict(a.nat_repr(), std::get<EpSet>(set)));
}

GroundFunction fn_linear(double alpha, const GroundFunction& a, double beta, const GroundFunction& b) {
  return fn_sum(fn_scale(a, alpha), fn_scale(b, beta));
}

GroundFunction fn_min(const GroundFunction& a, const GroundFunction& b) {
  same_space(a, b);
  if (!a.is_finite()) throw Unsupported("pointwise min has no closed form on nat");
  return GroundFunction::finite(zip_values(a.values(), b.values(), [](double x, double y) { return std::min(x, y); }));
}

GroundFunction fn_max(const GroundFunction& a, const GroundFunction& b) {
  same_space(a, b);
  if (!a.is_finite()) throw Unsupported("pointwise max has no closed form on nat");
  return GroundFunction::finite(zip_values(a.values(), b.values(), [](double x, double y) { return std::max(x, y); }));
}

Extrema extrema_of(const GroundFunction& f, const MeasurableSet& set) {
  check_in_algebra(f.space(), set);
  if (f.is_finite()) {
    const Mask m = std::get<Mask>(set);
    if (m == 0) throw EmptySet("extrema over the empty set");
    ExtremaAcc acc;
    for (int i : mask_elements(m)) acc.add(f.values()[i], true);
    return acc.e;
  }
  return ep_extrema_of(f.nat_repr(), std::get<EpSet>(set));
}

}  // namespace nonadd
