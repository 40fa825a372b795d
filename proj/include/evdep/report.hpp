#pragma once

#include <json.hpp>
#include <string>

#include "evdep/inference.hpp"

namespace evdep {

// Printf-%g style with a configurable number of significant digits; all
// CLI text/CSV output funnels through here so precision flags act
// globally. JSON uses the library's shortest-round-trip doubles instead.
std::string format_number(double v, int significant_digits);

nlohmann::json interval_to_json(const IntervalEstimate& e);
IntervalEstimate interval_from_json(const nlohmann::json& j);

nlohmann::json test_to_json(const TestResult& t);
TestResult test_from_json(const nlohmann::json& j);

}  // namespace evdep
