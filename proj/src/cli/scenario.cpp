#include "nonadd/cli/scenario.hpp"

#include <cmath>

namespace nonadd::cli {

using nlohmann::json;

namespace {

double to_double(const json& j, const std::string& pointer) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
  }
  throw InputError(pointer, "expected a number, got " + j.dump());
}

std::vector<double> numbers(const json& j, const std::string& pointer) {
  if (!j.is_array()) throw InputError(pointer, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(to_double(j[i], pointer + "/" + std::to_string(i)));
  return out;
}

Mask parse_mask(const GroundSpace& space, const std::string& s, const std::string& pointer) {
  if (!space.is_finite()) throw InputError(pointer, "binary mask '" + s + "' needs a finite space");
  if (s.size() < 3 || s.rfind("0b", 0) != 0) throw InputError(pointer, "expected a binary mask like 0b101");
  std::uint64_t m = 0;
  for (std::size_t i = 2; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw InputError(pointer, "invalid binary digit in '" + s + "'");
    if (m >> 40) throw InputError(pointer, "mask '" + s + "' is too long");
    m = (m << 1) | static_cast<std::uint64_t>(s[i] - '0');
  }
  if (m & ~static_cast<std::uint64_t>(space.full_mask())) {
    throw InputError(pointer, "mask '" + s + "' has points outside " + space.to_string());
  }
  return static_cast<Mask>(m);
}

const json& member(const json& j, const char* key, const std::string& pointer) {
  if (!j.is_object() || !j.contains(key)) throw InputError(pointer + "/" + key, "required field is missing");
  return j[key];
}

NatFunction parse_nat_function(const json& j, const std::string& pointer) {
  std::vector<double> prefix;
  if (j.contains("prefix")) prefix = numbers(j["prefix"], pointer + "/prefix");
  std::vector<std::vector<GeoTerm>> classes;
  const json& cls = member(j, "classes", pointer);
  for (std::size_t c = 0; c < cls.size(); ++c) {
    const std::string cp = pointer + "/classes/" + std::to_string(c);
    std::vector<GeoTerm> terms;
    for (std::size_t t = 0; t < cls[c].size(); ++t) {
      const std::string tp = cp + "/" + std::to_string(t);
      terms.push_back({to_double(member(cls[c][t], "coef", tp), tp + "/coef"),
                       to_double(member(cls[c][t], "ratio", tp), tp + "/ratio")});
    }
    classes.push_back(std::move(terms));
  }
  return NatFunction(std::move(prefix), std::move(classes));
}

Distortion parse_distortion(const json& j, const std::string& pointer) {
  if (j.contains("power")) return Distortion::power(to_double(j["power"], pointer + "/power"));
  if (j.contains("affine_clamped")) {
    const json& a = j["affine_clamped"];
    const std::string ap = pointer + "/affine_clamped";
    return Distortion::affine_clamped(to_double(member(a, "slope", ap), ap + "/slope"),
                                      to_double(member(a, "cap", ap), ap + "/cap"));
  }
  if (j.contains("points")) {
    std::vector<std::pair<double, double>> pts;
    const json& p = j["points"];
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto xy = numbers(p[i], pointer + "/points/" + std::to_string(i));
      if (xy.size() != 2) throw InputError(pointer + "/points/" + std::to_string(i), "expected a pair [t, g(t)]");
      pts.emplace_back(xy[0], xy[1]);
    }
    return Distortion::table(std::move(pts));
  }
  throw InputError(pointer, "distortion needs one of power, affine_clamped, points");
}

}  // namespace

GroundSpace parse_space(const json& j, const std::string& pointer) {
  if (j.is_string() && j.get<std::string>() == "nat") return GroundSpace::nat();
  if (j.is_object() && j.contains("finite")) {
    const json& n = j["finite"];
    if (!n.is_number_integer()) throw InputError(pointer + "/finite", "expected an integer size");
    return at_field(pointer + "/finite", [&] { return GroundSpace::finite(n.get<int>()); });
  }
  throw InputError(pointer, "expected {\"finite\": n} or \"nat\"");
}

MeasurableSet parse_set(const GroundSpace& space, const json& j, const std::string& pointer) {
  return at_field(pointer, [&]() -> MeasurableSet {
    if (j.is_string()) {
      const auto& s = j.get_ref<const std::string&>();
      if (s == "all") return full_set(space);
      if (s == "empty") return empty_set(space);
      if (s.rfind("0b", 0) == 0) return parse_mask(space, s, pointer);
      if (s.find("period:") != std::string::npos) {
        if (!space.is_nat()) throw InputError(pointer, "eventually periodic set needs the space nat");
        return EpSet::parse(s);
      }
      throw InputError(pointer, "unrecognized set literal '" + s + "'");
    }
    if (j.is_array()) {
      std::vector<std::uint64_t> elems;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_unsigned()) {
          throw InputError(pointer + "/" + std::to_string(i), "expected a nonnegative integer point");
        }
        elems.push_back(j[i].get<std::uint64_t>());
      }
      if (space.is_nat()) return EpSet::of(elems);
      Mask m = 0;
      for (std::size_t i = 0; i < elems.size(); ++i) {
        if (elems[i] >= static_cast<std::uint64_t>(space.size())) {
          throw InputError(pointer + "/" + std::to_string(i), "point outside " + space.to_string());
        }
        m |= Mask{1} << elems[i];
      }
      return m;
    }
    throw InputError(pointer, "expected a set literal");
  });
}

GroundFunction parse_function(const GroundSpace& space, const json& j, const std::string& pointer) {
  return at_field(pointer, [&]() -> GroundFunction {
    if (j.is_array()) {
      if (!space.is_finite()) throw InputError(pointer, "a value list needs a finite space");
      auto v = numbers(j, pointer);
      if (static_cast<int>(v.size()) != space.size()) {
        throw InputError(pointer, "expected " + std::to_string(space.size()) + " values, got " +
                                      std::to_string(v.size()));
      }
      return GroundFunction::finite(std::move(v));
    }
    if (!j.is_object()) throw InputError(pointer, "expected a function");
    if (j.contains("constant")) return GroundFunction::constant(space, to_double(j["constant"], pointer + "/constant"));
    if (j.contains("indicator")) {
      return GroundFunction::indicator(space, parse_set(space, j["indicator"], pointer + "/indicator"));
    }
    if (j.contains("geometric")) {
      if (!space.is_nat()) throw InputError(pointer, "geometric functions need the space nat");
      const json& g = j["geometric"];
      const std::string gp = pointer + "/geometric";
      return GroundFunction::nat(NatFunction::geometric(to_double(member(g, "coef", gp), gp + "/coef"),
                                                        to_double(member(g, "ratio", gp), gp + "/ratio")));
    }
    if (j.contains("classes")) {
      if (!space.is_nat()) throw InputError(pointer, "closed-form tails need the space nat");
      return GroundFunction::nat(parse_nat_function(j, pointer));
    }
    throw InputError(pointer, "function needs one of constant, indicator, geometric, classes or a value list");
  });
}

SetFunction parse_set_function(const GroundSpace& space, const json& j, const std::string& pointer) {
  return at_field(pointer, [&]() -> SetFunction {
    if (!j.is_object() || j.size() != 1) throw InputError(pointer, "expected an object with exactly one kind");
    const std::string kind = j.begin().key();
    const json& body = j.begin().value();
    const std::string bp = pointer + "/" + kind;
    if (kind == "table") {
      if (!space.is_finite()) throw InputError(pointer, "table set functions need a finite space");
      const std::size_t size = std::size_t{1} << space.size();
      auto checked = [](double x, const std::string& at) {
        if (!(x >= 0.0) || std::isinf(x)) throw InputError(at, "set function values must be finite and nonnegative");
        return x;
      };
      if (body.is_array()) {
        std::vector<double> v = numbers(body, bp);
        for (std::size_t i = 0; i < v.size(); ++i) checked(v[i], bp + "/" + std::to_string(i));
        return at_field(bp, [&] { return SetFunction::table(space.size(), std::move(v)); });
      }
      std::vector<double> v(size, 0.0);
      std::vector<bool> seen(size, false);
      seen[0] = true;
      for (const auto& [key, value] : body.items()) {
        const Mask m = parse_mask(space, key, bp + "/" + key);
        v[m] = checked(to_double(value, bp + "/" + key), bp + "/" + key);
        seen[m] = true;
      }
      for (std::size_t m = 1; m < size; ++m) {
        if (!seen[m]) {
          std::string bits;
          for (int i = space.size() - 1; i >= 0; --i) bits += ((m >> i) & 1) ? '1' : '0';
          throw InputError(bp, "missing value for mask 0b" + bits);
        }
      }
      return at_field(bp, [&] { return SetFunction::table(space.size(), std::move(v)); });
    }
    if (kind == "additive") return SetFunction::additive(parse_function(space, body, bp));
    if (kind == "distortion") {
      Distortion g = at_field(bp, [&] { return parse_distortion(body, bp); });
      return SetFunction::distortion(g, parse_function(space, member(body, "weights", bp), bp + "/weights"));
    }
    if (kind == "cardinality_rule") {
      return SetFunction::cardinality_rule(space, to_double(member(body, "finite", bp), bp + "/finite"),
                                           to_double(member(body, "infinite", bp), bp + "/infinite"));
    }
    if (kind == "scaled") {
      return SetFunction::scaled(to_double(member(body, "alpha", bp), bp + "/alpha"),
                                 parse_set_function(space, member(body, "of", bp), bp + "/of"));
    }
    if (kind == "sum") {
      std::vector<SetFunction> parts;
      for (std::size_t i = 0; i < body.size(); ++i) {
        parts.push_back(parse_set_function(space, body[i], bp + "/" + std::to_string(i)));
      }
      return SetFunction::sum(std::move(parts));
    }
    throw InputError(bp, "unknown set function kind '" + kind + "'");
  });
}

ScenarioReader::ScenarioReader(const json& doc)
    : doc_(doc), space_(parse_space(member(doc, "space", ""), "/space")) {}

bool ScenarioReader::has(const std::string& pointer) const { return doc_.contains(json::json_pointer(pointer)); }

const json& ScenarioReader::at(const std::string& pointer) const {
  if (!has(pointer)) throw InputError(pointer, "required field is missing");
  return doc_.at(json::json_pointer(pointer));
}

double ScenarioReader::number(const std::string& pointer, double fallback) const {
  return has(pointer) ? to_double(at(pointer), pointer) : fallback;
}

std::size_t ScenarioReader::count(const std::string& pointer, std::size_t fallback) const {
  if (!has(pointer)) return fallback;
  const json& j = at(pointer);
  if (!j.is_number_unsigned()) throw InputError(pointer, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::string ScenarioReader::text(const std::string& pointer, const std::string& fallback) const {
  if (!has(pointer)) return fallback;
  const json& j = at(pointer);
  if (!j.is_string()) throw InputError(pointer, "expected a string");
  return j.get<std::string>();
}

MeasurableSet ScenarioReader::set(const std::string& pointer) const { return parse_set(space_, at(pointer), pointer); }

MeasurableSet ScenarioReader::set_or_full(const std::string& pointer) const {
  return has(pointer) ? set(pointer) : full_set(space_);
}

GroundFunction ScenarioReader::function(const std::string& pointer) const {
  return parse_function(space_, at(pointer), pointer);
}

SetFunction ScenarioReader::set_function(const std::string& pointer) const {
  return parse_set_function(space_, at(pointer), pointer);
}

IvSetFunction ScenarioReader::iv_set_function(const std::string& pointer) const {
  SetFunction nu1 = set_function(pointer + "/nu1");
  SetFunction nu2 = set_function(pointer + "/nu2");
  return at_field(pointer, [&] { return IvSetFunction(nu1, nu2); });
}

IvFunction ScenarioReader::iv_function(const std::string& pointer) const {
  GroundFunction h1 = function(pointer + "/h1");
  GroundFunction h2 = function(pointer + "/h2");
  return at_field(pointer, [&] { return IvFunction(h1, h2); });
}

std::optional<GeometricFamily> ScenarioReader::geometric_family(const std::string& pointer) const {
  if (!has(pointer) || text(pointer + "/family", "") != "geometric") return std::nullopt;
  GeometricFamily fam{function(pointer + "/base"), function(pointer + "/delta"), number(pointer + "/ratio", 0.5),
                      number(pointer + "/spike", 0.0), std::nullopt};
  if (has(pointer + "/spike_set")) fam.spike_set = set(pointer + "/spike_set");
  return fam;
}

std::optional<EventuallyPeriodicFamily> ScenarioReader::periodic_family(const std::string& pointer) const {
  if (!has(pointer) || text(pointer + "/family", "") != "periodic") return std::nullopt;
  EventuallyPeriodicFamily fam;
  if (has(pointer + "/head")) {
    for (std::size_t i = 0; i < at(pointer + "/head").size(); ++i) {
      fam.head.push_back(function(pointer + "/head/" + std::to_string(i)));
    }
  }
  for (std::size_t i = 0; i < at(pointer + "/cycle").size(); ++i) {
    fam.cycle.push_back(function(pointer + "/cycle/" + std::to_string(i)));
  }
  if (fam.cycle.empty()) throw InputError(pointer + "/cycle", "cycle must not be empty");
  return fam;
}

std::optional<IvGeometricFamily> ScenarioReader::iv_geometric_family(const std::string& pointer) const {
  if (!has(pointer) || text(pointer + "/family", "") != "geometric") return std::nullopt;
  return IvGeometricFamily{iv_function(pointer + "/base"), function(pointer + "/delta1"),
                           function(pointer + "/delta2"), number(pointer + "/ratio", 0.5)};
}

std::vector<IvFunction> ScenarioReader::iv_terms(const std::string& pointer) const {
  std::vector<IvFunction> out;
  if (!has(pointer + "/terms")) return out;
  for (std::size_t i = 0; i < at(pointer + "/terms").size(); ++i) {
    out.push_back(iv_function(pointer + "/terms/" + std::to_string(i)));
  }
  return out;
}

}  // namespace nonadd::cli
