#include "nonadd/setfunc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nonadd/error.hpp"

namespace nonadd {

// ---------------------------------------------------------------------------
// Distortion

Distortion Distortion::power(double gamma) {
  if (!(gamma > 0.0 && std::isfinite(gamma))) throw InvalidArgument("power distortion needs gamma > 0");
  return Distortion(Kind::Power, gamma, 0.0);
}

Distortion Distortion::affine_clamped(double slope, double cap) {
  if (!(slope >= 0.0 && cap >= 0.0 && std::isfinite(slope) && std::isfinite(cap))) {
    throw InvalidArgument("affine-clamped distortion needs slope >= 0 and cap >= 0");
  }
  return Distortion(Kind::AffineClamped, slope, cap);
}

Distortion Distortion::table(std::vector<std::pair<double, double>> points) {
  std::sort(points.begin(), points.end());
  if (points.empty() || points.front().first != 0.0 || points.front().second != 0.0) {
    throw InvalidArgument("distortion table must contain (0, 0)");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [t, g] = points[i];
    if (!(std::isfinite(t) && std::isfinite(g) && t >= 0.0 && g >= 0.0)) {
      throw InvalidArgument("distortion table entries must be finite and nonnegative");
    }
    if (i > 0 && (t == points[i - 1].first || g < points[i - 1].second)) {
      throw InvalidArgument("distortion table must be strictly increasing in t and monotone in g");
    }
  }
  Distortion d(Kind::Table, 0.0, 0.0);
  d.points_ = std::move(points);
  return d;
}

double Distortion::operator()(double t) const {
  switch (kind_) {
    case Kind::Power:
      return t == 0.0 ? 0.0 : std::pow(t, a_);
    case Kind::AffineClamped:
      return std::min(a_ * t, b_);
    case Kind::Table: {
      for (const auto& [x, g] : points_)
        if (std::abs(x - t) <= 1e-12 * std::max(1.0, std::abs(t))) return g;
      throw InvalidArgument("distortion table has no entry for base value " + std::to_string(t));
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// SetFunction

struct SetFunction::Node {
  Kind kind;
  GroundSpace space;
  std::vector<double> table;
  std::optional<GroundFunction> weights;
  std::optional<Distortion> g;
  double a = 0.0;
  double b = 0.0;
  std::vector<SetFunction> children;
  std::string name;
  std::function<double(const MeasurableSet&)> eval;

  Node(Kind k, const GroundSpace& s) : kind(k), space(s) {}
};

namespace {

void check_nonneg(double v, const char* what) {
  if (!(std::isfinite(v) && v >= 0.0)) {
    throw InvalidArgument(std::string(what) + " must be finite and nonnegative, got " + std::to_string(v));
  }
}

void check_weights(const GroundFunction& w) {
  if (w.is_finite()) {
    for (double v : w.values()) check_nonneg(v, "additive weight");
    return;
  }
  const NatFunction& f = w.nat_repr();
  for (const auto& cls : f.classes())
    for (const auto& t : cls)
      if (t.ratio == 1.0) throw InvalidArgument("additive weights on nat must have a summable (geometric) tail");
  if (ep_extrema_of(f, EpSet::all()).inf < 0.0) throw InvalidArgument("additive weights must be nonnegative");
}

}  // namespace

SetFunction SetFunction::table(int n, std::vector<double> values) {
  const auto space = GroundSpace::finite(n);
  if (values.size() != (std::size_t{1} << n)) {
    throw InvalidArgument("table set function on " + space.to_string() + " needs " +
                          std::to_string(std::size_t{1} << n) + " values, got " + std::to_string(values.size()));
  }
  if (values[0] != 0.0) throw InvalidArgument("table set function must vanish on the empty set");
  for (double v : values) check_nonneg(v, "set function value");
  auto node = std::make_shared<Node>(Kind::Table, space);
  node->table = std::move(values);
  return SetFunction(std::move(node));
}

SetFunction SetFunction::tabulate(const GroundSpace& space, const std::function<double(Mask)>& fn) {
  if (!space.is_finite()) throw Unsupported("tabulate needs a finite space");
  std::vector<double> values(std::size_t{1} << space.size());
  for (std::size_t m = 0; m < values.size(); ++m) values[m] = fn(static_cast<Mask>(m));
  return table(space.size(), std::move(values));
}

SetFunction SetFunction::additive(GroundFunction weights) {
  check_weights(weights);
  auto node = std::make_shared<Node>(Kind::AdditiveWeights, weights.space());
  node->weights = std::move(weights);
  return SetFunction(std::move(node));
}

SetFunction SetFunction::distortion(Distortion g, GroundFunction weights) {
  check_weights(weights);
  auto node = std::make_shared<Node>(Kind::Distortion, weights.space());
  node->weights = std::move(weights);
  node->g = std::move(g);
  return SetFunction(std::move(node));
}

SetFunction SetFunction::cardinality_rule(const GroundSpace& space, double finite_value, double infinite_value) {
  check_nonneg(finite_value, "cardinality rule finite value");
  check_nonneg(infinite_value, "cardinality rule infinite value");
  auto node = std::make_shared<Node>(Kind::CardinalityRule, space);
  node->a = finite_value;
  node->b = infinite_value;
  return SetFunction(std::move(node));
}

SetFunction SetFunction::scaled(double alpha, SetFunction inner) {
  check_nonneg(alpha, "scale factor");
  auto node = std::make_shared<Node>(Kind::Scaled, inner.space());
  node->a = alpha;
  node->children.push_back(std::move(inner));
  return SetFunction(std::move(node));
}

SetFunction SetFunction::sum(std::vector<SetFunction> parts) {
  if (parts.empty()) throw InvalidArgument("sum of set functions needs at least one part");
  for (const auto& p : parts)
    if (!(p.space() == parts.front().space())) throw SpaceMismatch("sum mixes set functions on different spaces");
  auto node = std::make_shared<Node>(Kind::Sum, parts.front().space());
  node->children = std::move(parts);
  return SetFunction(std::move(node));
}

SetFunction SetFunction::op(const GroundSpace& space, std::string name,
                            std::function<double(const MeasurableSet&)> eval) {
  auto node = std::make_shared<Node>(Kind::Operator, space);
  node->name = std::move(name);
  node->eval = std::move(eval);
  return SetFunction(std::move(node));
}

const GroundSpace& SetFunction::space() const noexcept { return node_->space; }
SetFunction::Kind SetFunction::kind() const noexcept { return node_->kind; }

const std::vector<double>& SetFunction::table_values() const {
  if (kind() != Kind::Table) throw InvalidArgument("not a table set function");
  return node_->table;
}
const GroundFunction& SetFunction::weights() const {
  if (!node_->weights) throw InvalidArgument("set function has no weights");
  return *node_->weights;
}
const Distortion& SetFunction::distortion_fn() const {
  if (!node_->g) throw InvalidArgument("not a distortion set function");
  return *node_->g;
}
double SetFunction::finite_value() const { return node_->a; }
double SetFunction::infinite_value() const { return node_->b; }
double SetFunction::alpha() const { return node_->a; }
const SetFunction& SetFunction::inner() const {
  if (kind() != Kind::Scaled) throw InvalidArgument("not a scaled set function");
  return node_->children.front();
}
const std::vector<SetFunction>& SetFunction::parts() const { return node_->children; }

std::string SetFunction::describe() const {
  std::ostringstream os;
  switch (kind()) {
    case Kind::Table:
      os << "table(" << space().to_string() << ")";
      break;
    case Kind::AdditiveWeights:
      os << "additive(" << space().to_string() << ")";
      break;
    case Kind::Distortion:
      os << "distortion(" << space().to_string() << ")";
      break;
    case Kind::CardinalityRule:
      os << "cardinality_rule(finite=" << node_->a << ", infinite=" << node_->b << ")";
      break;
    case Kind::Scaled:
      os << node_->a << "*" << inner().describe();
      break;
    case Kind::Sum: {
      os << "sum(";
      for (std::size_t i = 0; i < parts().size(); ++i) os << (i ? ", " : "") << parts()[i].describe();
      os << ")";
      break;
    }
    case Kind::Operator:
      os << node_->name;
      break;
  }
  return os.str();
}

namespace {

double weight_sum(const GroundFunction& w, const MeasurableSet& a) {
  if (w.is_finite()) {
    double s = 0.0;
    for (int i : mask_elements(std::get<Mask>(a))) s += w.values()[i];
    return s;
  }
  return nat_series(w.nat_repr(), std::get<EpSet>(a)).value;
}

}  // namespace

double SetFunction::operator()(const MeasurableSet& a) const {
  check_in_algebra(space(), a);
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Table:
      return n.table[std::get<Mask>(a)];
    case Kind::AdditiveWeights:
      return weight_sum(*n.weights, a);
    case Kind::Distortion:
      return (*n.g)(weight_sum(*n.weights, a));
    case Kind::CardinalityRule: {
      if (is_empty(a)) return 0.0;
      if (const EpSet* e = std::get_if<EpSet>(&a); e != nullptr && !e->is_finite()) return n.b;
      return n.a;
    }
    case Kind::Scaled:
      return n.a * n.children.front()(a);
    case Kind::Sum: {
      double s = 0.0;
      for (const auto& c : n.children) s += c(a);
      return s;
    }
    case Kind::Operator:
      return is_empty(a) ? 0.0 : n.eval(a);
  }
  return 0.0;
}

double evaluate(const SetFunction& nu, const MeasurableSet& a) { return nu(a); }

std::vector<double> tabulate_values(const SetFunction& nu) {
  if (!nu.space().is_finite()) throw Unsupported("tabulate_values needs a finite space");
  if (nu.kind() == SetFunction::Kind::Table) return nu.table_values();
  std::vector<double> values(std::size_t{1} << nu.space().size());
  for (std::size_t m = 0; m < values.size(); ++m) values[m] = nu(static_cast<Mask>(m));
  return values;
}

SetFunction to_table(const SetFunction& nu) {
  if (nu.kind() == SetFunction::Kind::Table) return nu;
  auto values = tabulate_values(nu);
  for (double& v : values)
    if (v < 0.0 && v > -1e-300) v = 0.0;
  return SetFunction::table(nu.space().size(), std::move(values));
}

double singleton_value(const SetFunction& nu, std::uint64_t s) {
  if (nu.space().is_finite()) {
    if (s >= static_cast<std::uint64_t>(nu.space().size())) throw InvalidArgument("point outside space");
    return nu(Mask{1} << s);
  }
  return nu(EpSet::of({s}));
}

NatFunction singleton_profile(const SetFunction& nu) {
  if (!nu.space().is_nat()) throw Unsupported("singleton_profile is defined on nat");
  switch (nu.kind()) {
    case SetFunction::Kind::AdditiveWeights:
      return nu.weights().nat_repr();
    case SetFunction::Kind::CardinalityRule:
      return NatFunction::constant(nu.finite_value());
    case SetFunction::Kind::Scaled:
      return nat_scale(singleton_profile(nu.inner()), nu.alpha());
    case SetFunction::Kind::Sum: {
      NatFunction acc;
      for (const auto& p : nu.parts()) acc = nat_sum(acc, singleton_profile(p));
      return acc;
    }
    case SetFunction::Kind::Distortion: {
      const Distortion& g = nu.distortion_fn();
      const NatFunction& w = nu.weights().nat_repr();
      if (g.kind() == Distortion::Kind::Power) return nat_abs_pow(w, g.gamma());
      if (g.kind() == Distortion::Kind::AffineClamped) {
        // Past the cut-off every weight satisfies slope * w(n) <= cap, so g is linear there.
        std::uint64_t cut = w.prefix_length();
        auto bound_at = [&](std::uint64_t n) {
          double b = 0.0;
          for (const auto& cls : w.classes())
            for (const auto& t : cls) b += std::abs(t.coef) * std::pow(t.ratio, static_cast<double>(n));
          return g.slope() * b;
        };
        while (bound_at(cut) > g.cap()) {
          if (++cut > 1'000'000) throw Unsupported("affine-clamped distortion tail does not settle");
        }
        const NatFunction lin = nat_scale(w, g.slope()).aligned(cut, w.period());
        std::vector<double> prefix(cut);
        for (std::uint64_t n = 0; n < cut; ++n) prefix[n] = g(w.at(n));
        return NatFunction(std::move(prefix), lin.classes());
      }
      throw Unsupported("table distortion has no singleton profile on nat");
    }
    case SetFunction::Kind::Table:
    case SetFunction::Kind::Operator:
      break;
  }
  throw Unsupported("no closed-form singleton profile for " + nu.describe());
}

double value_tolerance(const SetFunction& nu) {
  double scale = 1.0;
  if (nu.space().is_finite()) {
    for (double v : tabulate_values(nu)) scale = std::max(scale, std::abs(v));
  }
  return 1e-12 * scale;
}

}  // namespace nonadd
