#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nonadd/iv_integral.hpp"
#include "nonadd/rl_integral.hpp"
#include "nonadd/setfunc.hpp"

namespace nonadd {

/// (integral of |f|^p)^(1/p). Negative p is accepted for the conjugate exponent
/// of the reverse Hoelder inequality and then requires |f| > 0 everywhere.
double seminorm_p(const GroundFunction& f, const SetFunction& nu, double p);

struct SetFunctionIntegrability {
  Verdict verdict = Verdict::NotDecidable;
  /// A set E with integral of chi_E different from nu(E).
  std::optional<MeasurableSet> witness;
  double integral = 0.0;
  double value = 0.0;
  std::string note;

  bool holds() const noexcept { return verdict == Verdict::Holds; }
};

/// Whether the integral of chi_E equals nu(E) for every E.
SetFunctionIntegrability is_rl_integrable_setfunction(const SetFunction& nu);

enum class InequalityKind { Holder, Minkowski, ReverseHolder, ReverseMinkowski };

const char* to_string(InequalityKind k);
InequalityKind parse_inequality_kind(const std::string& s);

struct NamedHypothesis {
  std::string name;
  Verdict verdict = Verdict::NotDecidable;
  std::string note;
};

struct InequalityReport {
  InequalityKind kind = InequalityKind::Holder;
  double p = 0.0;
  double q = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  /// All theorem hypotheses hold; otherwise the evaluation is exploratory.
  bool applicable = false;
  std::vector<NamedHypothesis> hypotheses;
};

/// Evaluates both sides of the inequality. `q`, when given, must be the
/// conjugate exponent p / (p - 1).
InequalityReport check_inequality(InequalityKind kind, const GroundFunction& g, const GroundFunction& h,
                                  const SetFunction& nu, double p, std::optional<double> q = std::nullopt,
                                  double tolerance = 1e-12);

// ---------------------------------------------------------------------------
// Convergence harness

enum class ConvergenceMode { Uniform, InMeasure, AlmostEverywhere, PNorm, Fatou, Monotone, SetwiseVarying, Atom };

const char* to_string(ConvergenceMode m);
ConvergenceMode parse_convergence_mode(const std::string& s);

/// f_n = base + ratio^n * delta + spike * chi_Z (the spike does not decay).
struct GeometricFamily {
  GroundFunction base;
  GroundFunction delta;
  double ratio = 0.5;
  double spike = 0.0;
  std::optional<MeasurableSet> spike_set;

  GroundFunction term(std::size_t n) const;
};

/// f_1, ..., f_k explicitly, then the block `cycle` repeated forever.
struct EventuallyPeriodicFamily {
  std::vector<GroundFunction> head;
  std::vector<GroundFunction> cycle;

  const GroundFunction& term(std::size_t n) const;
};

struct ScalarConvergenceInput {
  SetFunction nu;
  std::optional<GeometricFamily> geometric;
  std::optional<EventuallyPeriodicFamily> periodic;
  double p = 2.0;
  /// Threshold for the in-measure deviation sets {|f_n - f| >= eps}.
  double epsilon = 1e-3;
};

/// H_n = base + ratio^n * delta, componentwise.
struct IvGeometricFamily {
  IvFunction base;
  GroundFunction delta1;
  GroundFunction delta2;
  double ratio = 0.5;

  IvFunction term(std::size_t n) const;
};

struct IvConvergenceInput {
  IvSetFunction gamma;
  std::optional<IvGeometricFamily> geometric;
  /// Explicit H_1, ..., H_k (Fatou: then repeated as a cycle; monotone: then constant).
  std::vector<IvFunction> terms;
  /// Atom mode: the atom B.
  std::optional<Mask> atom;
  double epsilon = 1e-3;
};

struct ConvergenceOptions {
  std::size_t n_terms = 30;
  double tolerance = 1e-8;
};

struct ConvergenceReport {
  ConvergenceMode mode = ConvergenceMode::Uniform;
  bool interval = false;
  std::size_t n_terms = 0;
  double tolerance = 0.0;
  /// d_n for n = 1..N (Fatou: the integrals of f_n; atom: the distances).
  std::vector<double> distances;
  /// Per-n bounds where the mode has one (atom: d_H(H_n(b), H(b)) * variation).
  std::vector<double> bounds;
  /// Per-n auxiliary measure (in-measure: semivariation of the deviation set;
  /// setwise: variation distance of the set functions).
  std::vector<double> auxiliary;
  bool verdict = false;
  bool exploratory = false;
  std::vector<NamedHypothesis> hypotheses;
  /// Fatou / monotone: the two sides of the asserted relation.
  std::optional<std::pair<double, double>> scalar_sides;
  std::optional<std::pair<Interval, Interval>> interval_sides;
  std::string note;
};

/// Scalar modes: Uniform, InMeasure, AlmostEverywhere, PNorm, Fatou.
ConvergenceReport run_convergence(ConvergenceMode mode, const ScalarConvergenceInput& in,
                                  const ConvergenceOptions& opts = {});
/// Interval modes: Uniform, InMeasure, AlmostEverywhere, Fatou, Monotone, SetwiseVarying, Atom.
ConvergenceReport run_convergence(ConvergenceMode mode, const IvConvergenceInput& in,
                                  const ConvergenceOptions& opts = {});

/// True if d_N <= tol and d_n does not increase over the last five terms.
bool limit_verdict(const std::vector<double>& d, double tol);

}  // namespace nonadd
