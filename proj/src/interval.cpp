#include "nonadd/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "nonadd/error.hpp"

namespace nonadd {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || lo > hi) {
    throw InvalidInterval("invalid interval [" + fmt(lo) + ", " + fmt(hi) + "]");
  }
}

std::string Interval::to_string() const { return "[" + fmt(lo_) + ", " + fmt(hi_) + "]"; }

Interval operator+(const Interval& a, const Interval& b) { return Interval(a.lo() + b.lo(), a.hi() + b.hi()); }
Interval iv_add(const Interval& a, const Interval& b) { return a + b; }

Interval iv_scale(const Interval& a, double lambda) {
  if (!(lambda >= 0.0)) throw InvalidArgument("interval scale factor must be nonnegative");
  return Interval(lambda * a.lo(), lambda * a.hi());
}

Interval iv_mul(const Interval& a, const Interval& b) { return Interval(a.lo() * b.lo(), a.hi() * b.hi()); }

Interval iv_meet(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

Interval iv_join(const Interval& a, const Interval& b) {
  return Interval(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

bool iv_leq(const Interval& a, const Interval& b) { return a.lo() <= b.lo() && a.hi() <= b.hi(); }
bool iv_subset(const Interval& a, const Interval& b) { return b.lo() <= a.lo() && a.hi() <= b.hi(); }

double hausdorff(const Interval& a, const Interval& b) {
  return std::max(std::abs(b.lo() - a.lo()), std::abs(b.hi() - a.hi()));
}

double iv_norm(const Interval& a) { return a.hi(); }

// ---------------------------------------------------------------------------
// Sequences

ScalarSeq::ScalarSeq(std::vector<double> head, Tail tail) : head_(std::move(head)), tail_(std::move(tail)) {
  if (const auto* c = std::get_if<Cycle>(&tail_); c != nullptr && c->block.empty()) {
    throw InvalidArgument("sequence cycle must be nonempty");
  }
  if (const auto* c = std::get_if<Convergent>(&tail_);
      c != nullptr && c->geometric && !(c->ratio > 0.0 && c->ratio < 1.0)) {
    throw InvalidArgument("geometric sequence tail needs ratio in (0, 1)");
  }
}

double ScalarSeq::at(std::size_t n) const {
  if (n < head_.size()) return head_[n];
  const std::size_t k = n - head_.size();
  if (const auto* c = std::get_if<Cycle>(&tail_)) return c->block[k % c->block.size()];
  if (const auto* c = std::get_if<Convergent>(&tail_)) {
    if (c->geometric) return c->limit + c->coef * std::pow(c->ratio, static_cast<double>(k));
    return c->limit + c->coef / static_cast<double>(k + 1);
  }
  return static_cast<double>(k + 1);
}

namespace {

double head_min(const std::vector<double>& h) {
  return h.empty() ? std::numeric_limits<double>::infinity() : *std::min_element(h.begin(), h.end());
}
double head_max(const std::vector<double>& h) {
  return h.empty() ? -std::numeric_limits<double>::infinity() : *std::max_element(h.begin(), h.end());
}

}  // namespace

double ScalarSeq::inf() const {
  double tail_inf = 0.0;
  if (const auto* c = std::get_if<Cycle>(&tail_)) {
    tail_inf = *std::min_element(c->block.begin(), c->block.end());
  } else if (const auto* c = std::get_if<Convergent>(&tail_)) {
    // Tail terms move monotonically toward the limit from the side of coef.
    tail_inf = c->coef >= 0.0 ? c->limit : c->limit + c->coef;
  } else {
    tail_inf = at(head_.size());
  }
  return std::min(head_min(head_), tail_inf);
}

double ScalarSeq::sup() const {
  double tail_sup = 0.0;
  if (const auto* c = std::get_if<Cycle>(&tail_)) {
    tail_sup = *std::max_element(c->block.begin(), c->block.end());
  } else if (const auto* c = std::get_if<Convergent>(&tail_)) {
    tail_sup = c->coef <= 0.0 ? c->limit : c->limit + c->coef;
  } else {
    throw UnboundedSup("sequence tail grows without bound");
  }
  return std::max(head_max(head_), tail_sup);
}

double ScalarSeq::liminf() const {
  if (const auto* c = std::get_if<Cycle>(&tail_)) return *std::min_element(c->block.begin(), c->block.end());
  if (const auto* c = std::get_if<Convergent>(&tail_)) return c->limit;
  return std::numeric_limits<double>::infinity();
}

double ScalarSeq::limsup() const {
  if (const auto* c = std::get_if<Cycle>(&tail_)) return *std::max_element(c->block.begin(), c->block.end());
  if (const auto* c = std::get_if<Convergent>(&tail_)) return c->limit;
  return std::numeric_limits<double>::infinity();
}

Interval iv_seq_inf(const IntervalSeq& s) { return Interval(s.lo.inf(), s.hi.inf()); }

Interval iv_seq_sup(const IntervalSeq& s) {
  const double hi = s.hi.sup();
  return Interval(s.lo.sup(), hi);
}

Interval iv_seq_liminf(const IntervalSeq& s) {
  const double hi = s.hi.liminf();
  if (!std::isfinite(hi)) throw UnboundedSup("upper endpoints diverge; liminf is unbounded");
  return Interval(s.lo.liminf(), hi);
}

}  // namespace nonadd
