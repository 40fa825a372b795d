#include "evdep/report.hpp"

#include <cmath>
#include <cstdio>

namespace evdep {

std::string format_number(double v, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, v);
  return buf;
}

nlohmann::json interval_to_json(const IntervalEstimate& e) {
  nlohmann::json j{
      {"point", e.point},
      {"lower", e.lower},
      {"upper", e.upper},
      {"level", e.level},
      {"method", to_string(e.method)},
      {"construction",
       e.construction == IntervalEstimate::Construction::closed_form
           ? "closed_form"
           : "grid_inversion"},
  };
  if (e.construction == IntervalEstimate::Construction::grid_inversion) {
    j["grid_step"] = e.grid_step;
    j["mc_draws"] = e.mc_draws;
    j["non_interval_flag"] = e.non_interval_flag;
    j["empty_acceptance"] = e.empty_acceptance;
  }
  return j;
}

IntervalEstimate interval_from_json(const nlohmann::json& j) {
  IntervalEstimate e;
  e.point = j.at("point").get<double>();
  e.lower = j.at("lower").get<double>();
  e.upper = j.at("upper").get<double>();
  e.level = j.at("level").get<double>();
  e.method = j.at("method").get<std::string>() == "fisher" ? Method::fisher
                                                           : Method::standard;
  if (j.at("construction").get<std::string>() == "grid_inversion") {
    e.construction = IntervalEstimate::Construction::grid_inversion;
    e.grid_step = j.at("grid_step").get<double>();
    e.mc_draws = j.at("mc_draws").get<std::size_t>();
    e.non_interval_flag = j.at("non_interval_flag").get<bool>();
    e.empty_acceptance = j.at("empty_acceptance").get<bool>();
  } else {
    e.construction = IntervalEstimate::Construction::closed_form;
  }
  return e;
}

nlohmann::json test_to_json(const TestResult& t) {
  nlohmann::json j{
      {"statistic", t.statistic},
      {"p_value", t.p_value},
      {"hypothesis", t.hypothesis},
  };
  if (t.p_equal) j["p_equal"] = *t.p_equal;
  if (t.p_distinct) j["p_distinct"] = *t.p_distinct;
  if (t.p_marginal) j["p_marginal"] = *t.p_marginal;
  if (t.p_sigma) j["p_sigma"] = *t.p_sigma;
  return j;
}

TestResult test_from_json(const nlohmann::json& j) {
  TestResult t;
  t.statistic = j.at("statistic").get<double>();
  t.p_value = j.at("p_value").get<double>();
  t.hypothesis = j.at("hypothesis").get<std::string>();
  if (j.contains("p_equal")) t.p_equal = j["p_equal"].get<double>();
  if (j.contains("p_distinct")) t.p_distinct = j["p_distinct"].get<double>();
  if (j.contains("p_marginal")) t.p_marginal = j["p_marginal"].get<double>();
  if (j.contains("p_sigma")) t.p_sigma = j["p_sigma"].get<double>();
  return t;
}

}  // namespace evdep
