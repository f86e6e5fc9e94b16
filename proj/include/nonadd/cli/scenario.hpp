#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "nonadd/analysis.hpp"
#include "nonadd/error.hpp"
#include "nonadd/ground.hpp"
#include "nonadd/iv_integral.hpp"
#include "nonadd/setfunc.hpp"

namespace nonadd::cli {

/// Malformed scenario input; `field` is a JSON pointer into the scenario.
class InputError : public std::runtime_error {
 public:
  InputError(std::string field, const std::string& message)
      : std::runtime_error(message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Typed access to a validated scenario document. Every accessor reports
/// failures as InputError at the offending field.
class ScenarioReader {
 public:
  explicit ScenarioReader(const nlohmann::json& doc);

  const nlohmann::json& doc() const noexcept { return doc_; }
  const GroundSpace& space() const noexcept { return space_; }

  bool has(const std::string& pointer) const;
  const nlohmann::json& at(const std::string& pointer) const;

  double number(const std::string& pointer, double fallback) const;
  std::size_t count(const std::string& pointer, std::size_t fallback) const;
  std::string text(const std::string& pointer, const std::string& fallback) const;

  MeasurableSet set(const std::string& pointer) const;
  /// The full space when the field is absent.
  MeasurableSet set_or_full(const std::string& pointer) const;
  GroundFunction function(const std::string& pointer) const;
  SetFunction set_function(const std::string& pointer) const;
  IvSetFunction iv_set_function(const std::string& pointer) const;
  IvFunction iv_function(const std::string& pointer) const;

  std::optional<GeometricFamily> geometric_family(const std::string& pointer) const;
  std::optional<EventuallyPeriodicFamily> periodic_family(const std::string& pointer) const;
  std::optional<IvGeometricFamily> iv_geometric_family(const std::string& pointer) const;
  std::vector<IvFunction> iv_terms(const std::string& pointer) const;

 private:
  const nlohmann::json& doc_;
  GroundSpace space_;
};

GroundSpace parse_space(const nlohmann::json& j, const std::string& pointer);
MeasurableSet parse_set(const GroundSpace& space, const nlohmann::json& j, const std::string& pointer);
GroundFunction parse_function(const GroundSpace& space, const nlohmann::json& j, const std::string& pointer);
SetFunction parse_set_function(const GroundSpace& space, const nlohmann::json& j, const std::string& pointer);

/// Runs `fn`, converting library errors into InputError at `pointer`.
template <class Fn>
auto at_field(const std::string& pointer, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const InputError&) {
    throw;
  } catch (const HypothesisViolated&) {
    throw;
  } catch (const Error& e) {
    throw InputError(pointer, e.what());
  }
}

}  // namespace nonadd::cli
