#include "nonadd/ground.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "nonadd/error.hpp"

namespace nonadd {

namespace {

constexpr std::uint64_t kMaxPeriod = 1u << 20;

std::vector<bool> parse_bits(std::string_view s, std::string_view what) {
  std::vector<bool> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c == '0') {
      bits.push_back(false);
    } else if (c == '1') {
      bits.push_back(true);
    } else {
      throw InvalidArgument("EpSet " + std::string(what) + ": expected bits, got '" +
                            std::string(s) + "'");
    }
  }
  return bits;
}

// Smallest q such that the cyclic pattern is q-periodic and q divides its length.
std::size_t primitive_period(const std::vector<bool>& pattern) {
  const std::size_t p = pattern.size();
  std::vector<std::size_t> border(p, 0);
  for (std::size_t i = 1; i < p; ++i) {
    std::size_t k = border[i - 1];
    while (k > 0 && pattern[i] != pattern[k]) k = border[k - 1];
    if (pattern[i] == pattern[k]) ++k;
    border[i] = k;
  }
  const std::size_t q = p - border[p - 1];
  return (p % q == 0) ? q : p;
}

}  // namespace

GroundSpace GroundSpace::finite(int n) {
  if (n < 1 || n > kMaxFiniteSize) {
    throw InvalidArgument("finite space size must be in [1, " + std::to_string(kMaxFiniteSize) +
                          "], got " + std::to_string(n));
  }
  return GroundSpace(Kind::Finite, n);
}

Mask GroundSpace::full_mask() const noexcept {
  if (!is_finite()) return 0;
  return static_cast<Mask>((std::uint64_t{1} << n_) - 1);
}

std::string GroundSpace::to_string() const {
  return is_finite() ? "finite(" + std::to_string(n_) + ")" : "nat";
}

std::uint64_t lcm_checked(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t l = std::lcm(a, b);
  if (l > kMaxPeriod) {
    throw Unsupported("combined period " + std::to_string(l) + " exceeds the supported maximum");
  }
  return l;
}

// ---------------------------------------------------------------------------
// EpSet

EpSet::EpSet() : period_{false} {}

EpSet::EpSet(std::vector<bool> prefix, std::vector<bool> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw InvalidArgument("EpSet period must be nonempty");
  if (period_.size() > kMaxPeriod) throw Unsupported("EpSet period too long");
  canonicalize();
}

void EpSet::canonicalize() {
  period_.resize(primitive_period(period_));
  // Absorb trailing prefix bits that continue the periodic pattern backwards.
  while (!prefix_.empty() && prefix_.back() == period_.back()) {
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    prefix_.pop_back();
  }
}

EpSet EpSet::all() { return EpSet({}, {true}); }

EpSet EpSet::of(const std::vector<std::uint64_t>& elements) {
  if (elements.empty()) return EpSet();
  const std::uint64_t top = *std::max_element(elements.begin(), elements.end());
  if (top >= kMaxPeriod) throw Unsupported("finite EpSet element too large");
  std::vector<bool> prefix(top + 1, false);
  for (auto e : elements) prefix[e] = true;
  return EpSet(std::move(prefix), {false});
}

EpSet EpSet::residue_class(std::uint64_t residue, std::uint64_t modulus) {
  if (modulus == 0) throw InvalidArgument("residue class modulus must be positive");
  if (modulus > kMaxPeriod) throw Unsupported("residue class modulus too large");
  std::vector<bool> period(modulus, false);
  period[residue % modulus] = true;
  return EpSet({}, std::move(period));
}

EpSet EpSet::tail_from(std::uint64_t start) {
  if (start > kMaxPeriod) throw Unsupported("tail start too large");
  return EpSet(std::vector<bool>(start, false), {true});
}

EpSet EpSet::parse(std::string_view text) {
  std::string prefix_bits;
  std::string period_bits;
  bool saw_period = false;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token.rfind("prefix:", 0) == 0) {
      prefix_bits = token.substr(7);
    } else if (token.rfind("period:", 0) == 0) {
      period_bits = token.substr(7);
      saw_period = true;
    } else {
      throw InvalidArgument("EpSet: unexpected token '" + token + "' in \"" + std::string(text) +
                            "\"");
    }
  }
  if (!saw_period || period_bits.empty()) {
    throw InvalidArgument("EpSet: missing nonempty 'period:' in \"" + std::string(text) + "\"");
  }
  return EpSet(parse_bits(prefix_bits, "prefix"), parse_bits(period_bits, "period"));
}

bool EpSet::contains(std::uint64_t n) const noexcept {
  if (n < prefix_.size()) return prefix_[n];
  return period_[(n - prefix_.size()) % period_.size()];
}

bool EpSet::is_empty() const noexcept {
  return is_finite() && std::none_of(prefix_.begin(), prefix_.end(), [](bool b) { return b; });
}

bool EpSet::is_finite() const noexcept {
  return std::none_of(period_.begin(), period_.end(), [](bool b) { return b; });
}

std::optional<std::uint64_t> EpSet::min_element() const noexcept {
  for (std::size_t i = 0; i < prefix_.size(); ++i)
    if (prefix_[i]) return i;
  for (std::size_t i = 0; i < period_.size(); ++i)
    if (period_[i]) return prefix_.size() + i;
  return std::nullopt;
}

std::vector<std::uint64_t> EpSet::elements_below(std::uint64_t bound) const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 0; n < bound; ++n)
    if (contains(n)) out.push_back(n);
  return out;
}

std::vector<std::uint64_t> EpSet::finite_elements() const {
  if (!is_finite()) throw Unsupported("finite_elements on infinite set " + to_string());
  return elements_below(prefix_.size());
}

std::string EpSet::to_string() const {
  std::string s = "prefix:";
  for (bool b : prefix_) s.push_back(b ? '1' : '0');
  s += " period:";
  for (bool b : period_) s.push_back(b ? '1' : '0');
  return s;
}

EpSet ep_combine(const EpSet& a, const EpSet& b, SetOp op) {
  const std::size_t len = std::max(a.prefix_length(), b.prefix_length());
  const std::uint64_t per = lcm_checked(a.period_length(), b.period_length());
  auto apply = [op](bool x, bool y) {
    switch (op) {
      case SetOp::Union:
        return x || y;
      case SetOp::Intersection:
        return x && y;
      case SetOp::Difference:
        return x && !y;
    }
    return false;
  };
  std::vector<bool> prefix(len);
  for (std::size_t n = 0; n < len; ++n) prefix[n] = apply(a.contains(n), b.contains(n));
  std::vector<bool> period(per);
  for (std::uint64_t i = 0; i < per; ++i) period[i] = apply(a.contains(len + i), b.contains(len + i));
  return EpSet(std::move(prefix), std::move(period));
}

EpSet ep_complement(const EpSet& a) { return ep_combine(EpSet::all(), a, SetOp::Difference); }

Cardinality ep_cardinality(const EpSet& a) {
  if (!a.is_finite()) return Cardinality::infinite();
  const auto& p = a.prefix();
  return {true, static_cast<std::uint64_t>(std::count(p.begin(), p.end(), true))};
}

std::pair<EpSet, EpSet> ep_split_infinite(const EpSet& a) {
  if (a.is_finite()) throw InvalidArgument("ep_split_infinite on finite set " + a.to_string());
  const auto& per = a.period();
  const std::size_t p = per.size();
  std::vector<bool> first(2 * p, false);
  std::vector<bool> second(2 * p, false);
  for (std::size_t i = 0; i < p; ++i) {
    first[i] = per[i];
    second[p + i] = per[i];
  }
  return {EpSet(a.prefix(), std::move(first)),
          EpSet(std::vector<bool>(a.prefix_length(), false), std::move(second))};
}

// ---------------------------------------------------------------------------
// MeasurableSet helpers

namespace {

template <class MaskFn, class EpFn>
MeasurableSet binary(const MeasurableSet& a, const MeasurableSet& b, MaskFn mf, EpFn ef) {
  if (a.index() != b.index()) throw SpaceMismatch("set operation mixes finite and countable sets");
  if (const Mask* ma = std::get_if<Mask>(&a)) return mf(*ma, std::get<Mask>(b));
  return ef(std::get<EpSet>(a), std::get<EpSet>(b));
}

}  // namespace

bool is_empty(const MeasurableSet& a) {
  if (const Mask* m = std::get_if<Mask>(&a)) return *m == 0;
  return std::get<EpSet>(a).is_empty();
}

void check_in_algebra(const GroundSpace& space, const MeasurableSet& a) {
  if (space.is_finite()) {
    const Mask* m = std::get_if<Mask>(&a);
    if (m == nullptr) throw NotInAlgebra("expected a subset of " + space.to_string() + ", got an EpSet");
    if ((*m & ~space.full_mask()) != 0) {
      throw NotInAlgebra("mask " + set_to_string(a) + " exceeds " + space.to_string());
    }
  } else if (!std::holds_alternative<EpSet>(a)) {
    throw NotInAlgebra("expected an eventually periodic subset of nat, got a finite mask");
  }
}

MeasurableSet set_union(const MeasurableSet& a, const MeasurableSet& b) {
  return binary(
      a, b, [](Mask x, Mask y) -> MeasurableSet { return x | y; },
      [](const EpSet& x, const EpSet& y) -> MeasurableSet { return ep_combine(x, y, SetOp::Union); });
}

MeasurableSet set_intersection(const MeasurableSet& a, const MeasurableSet& b) {
  return binary(
      a, b, [](Mask x, Mask y) -> MeasurableSet { return x & y; },
      [](const EpSet& x, const EpSet& y) -> MeasurableSet {
        return ep_combine(x, y, SetOp::Intersection);
      });
}

MeasurableSet set_difference(const MeasurableSet& a, const MeasurableSet& b) {
  return binary(
      a, b, [](Mask x, Mask y) -> MeasurableSet { return x & ~y; },
      [](const EpSet& x, const EpSet& y) -> MeasurableSet {
        return ep_combine(x, y, SetOp::Difference);
      });
}

bool is_subset(const MeasurableSet& a, const MeasurableSet& b) {
  return is_empty(set_difference(a, b));
}

MeasurableSet full_set(const GroundSpace& space) {
  if (space.is_finite()) return space.full_mask();
  return EpSet::all();
}

MeasurableSet empty_set(const GroundSpace& space) {
  if (space.is_finite()) return Mask{0};
  return EpSet::empty();
}

bool contains(const MeasurableSet& a, std::uint64_t point) {
  if (const Mask* m = std::get_if<Mask>(&a)) return point < 32 && ((*m >> point) & 1u) != 0;
  return std::get<EpSet>(a).contains(point);
}

std::string set_to_string(const MeasurableSet& a) {
  if (const Mask* m = std::get_if<Mask>(&a)) {
    std::string s = "{";
    bool first = true;
    for (int e : mask_elements(*m)) {
      if (!first) s += ",";
      s += std::to_string(e);
      first = false;
    }
    return s + "}";
  }
  return std::get<EpSet>(a).to_string();
}

std::vector<int> mask_elements(Mask m) {
  std::vector<int> out;
  while (m != 0) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

Mask mask_of(const std::vector<int>& elements) {
  Mask m = 0;
  for (int e : elements) {
    if (e < 0 || e >= kMaxFiniteSize) throw InvalidArgument("point " + std::to_string(e) + " out of range");
    m |= Mask{1} << e;
  }
  return m;
}

}  // namespace nonadd
