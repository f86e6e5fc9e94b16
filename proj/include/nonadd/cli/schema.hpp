#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace nonadd::cli {

struct SchemaError {
  /// JSON pointer to the offending value in the instance.
  std::string path;
  std::string message;
};

/// Validates against the JSON-schema subset used by the shipped schemas:
/// type, enum, const, properties, required, additionalProperties, items,
/// minItems, maxItems, minimum, maximum, exclusiveMinimum, minLength, pattern,
/// oneOf, anyOf, $ref (local "#/$defs/..." only).
class SchemaValidator {
 public:
  explicit SchemaValidator(nlohmann::json schema);

  /// All errors found; empty when the instance validates. oneOf/anyOf report
  /// the branch that got furthest.
  std::vector<SchemaError> validate(const nlohmann::json& instance) const;

 private:
  void check(const nlohmann::json& schema, const nlohmann::json& value, const std::string& path,
             std::vector<SchemaError>& out, int depth) const;
  const nlohmann::json& resolve(const nlohmann::json& schema) const;

  nlohmann::json root_;
};

/// The shipped scenario and report schemas.
const SchemaValidator& scenario_schema();
const SchemaValidator& report_schema();

}  // namespace nonadd::cli
