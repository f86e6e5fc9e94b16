#pragma once

#include <string>
#include <variant>
#include <vector>

namespace nonadd {

/// Compact interval [lo, hi] of nonnegative reals.
class Interval {
 public:
  Interval() = default;
  /// Throws InvalidInterval unless 0 <= lo <= hi < inf.
  Interval(double lo, double hi);

  static Interval point(double x) { return Interval(x, x); }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  std::string to_string() const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

/// Minkowski sum.
Interval operator+(const Interval& a, const Interval& b);
Interval iv_add(const Interval& a, const Interval& b);
/// lambda * [lo, hi] for lambda >= 0.
Interval iv_scale(const Interval& a, double lambda);
/// [r, s] * [x, y] = [rx, sy].
Interval iv_mul(const Interval& a, const Interval& b);
Interval iv_meet(const Interval& a, const Interval& b);
Interval iv_join(const Interval& a, const Interval& b);
/// Weak interval order: a.lo <= b.lo and a.hi <= b.hi.
bool iv_leq(const Interval& a, const Interval& b);
/// Inclusion a within b.
bool iv_subset(const Interval& a, const Interval& b);
double hausdorff(const Interval& a, const Interval& b);
/// ||[r, s]||_H = s.
double iv_norm(const Interval& a);

/// Real sequence: explicit head terms followed by a closed-form tail.
class ScalarSeq {
 public:
  /// Tail repeating the given block forever.
  struct Cycle {
    std::vector<double> block;
  };
  /// Tail limit + coef / (k + 1) (harmonic) or limit + coef * ratio^k (geometric), k = 0, 1, ...
  struct Convergent {
    double limit = 0.0;
    double coef = 0.0;
    bool geometric = false;
    double ratio = 0.5;
  };
  /// Tail increasing without bound.
  struct Divergent {};
  using Tail = std::variant<Cycle, Convergent, Divergent>;

  ScalarSeq(std::vector<double> head, Tail tail);

  static ScalarSeq constant(double c) { return ScalarSeq({}, Cycle{{c}}); }

  /// Value of term n; a divergent tail is modelled as k + 1 for the k-th tail term.
  double at(std::size_t n) const;
  const std::vector<double>& head() const noexcept { return head_; }
  const Tail& tail() const noexcept { return tail_; }

  double inf() const;
  /// Throws UnboundedSup for a divergent tail.
  double sup() const;
  double liminf() const;
  double limsup() const;

 private:
  std::vector<double> head_;
  Tail tail_;
};

/// Sequence of intervals [u_n, v_n] given componentwise.
struct IntervalSeq {
  ScalarSeq lo;
  ScalarSeq hi;

  Interval at(std::size_t n) const { return Interval(lo.at(n), hi.at(n)); }
};

Interval iv_seq_inf(const IntervalSeq& s);
/// Throws UnboundedSup when the upper endpoints are unbounded.
Interval iv_seq_sup(const IntervalSeq& s);
Interval iv_seq_liminf(const IntervalSeq& s);

}  // namespace nonadd
