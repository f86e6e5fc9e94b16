#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace nonadd::cli {

struct PropertyOutcome {
  nlohmann::json result;
  std::size_t violations = 0;
};

/// Names accepted by run_property.
const std::vector<std::string>& property_families();

/// `count` seeded random instances of one theorem family. Throws InvalidArgument
/// for an unknown family.
PropertyOutcome run_property(const std::string& family, std::size_t count, std::uint64_t seed);

}  // namespace nonadd::cli
