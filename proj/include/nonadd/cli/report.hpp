#pragma once

#include <json.hpp>

#include "nonadd/analysis.hpp"
#include "nonadd/iv_integral.hpp"
#include "nonadd/rl_integral.hpp"
#include "nonadd/setfunc.hpp"

namespace nonadd::cli {

/// Finite doubles as numbers; infinities and NaN as the strings "inf", "-inf", "nan".
nlohmann::json num(double x);
nlohmann::json to_json(const Interval& v);
nlohmann::json to_json(const MeasurableSet& s);
nlohmann::json to_json(const Partition& p);
nlohmann::json to_json(const IntegralReport& r);
nlohmann::json to_json(const ComparisonReport& r);
nlohmann::json to_json(const PropertyReport& r);
nlohmann::json to_json(const SetFunctionIntegrability& r);
nlohmann::json to_json(const InequalityReport& r);
nlohmann::json to_json(const ConvergenceReport& r);
nlohmann::json to_json(const IvIntegralReport& r);
nlohmann::json to_json(const IvSuiteReport& r);
nlohmann::json to_json(const AtomIntegral& r);
nlohmann::json to_json(const std::vector<AtomConvergenceStep>& steps);

}  // namespace nonadd::cli
