#ifndef FDA_PLAN_HPP
#define FDA_PLAN_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "driver.hpp"
#include "io.hpp"
#include "suite.hpp"

namespace fda::runner {

inline const std::vector<int> kProtocolDimensions{2, 3, 5, 10, 20, 40};

/// A run matrix: one deterministic trial per (function, dimension, instance).
struct ExperimentPlan {
  std::vector<int> dimensions = kProtocolDimensions;
  std::vector<int> functions = bench::implemented_function_ids();
  std::vector<int> instances{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
  std::int64_t budget_multiplier = 1000;
  FdaConfig fda;  // bounds and budget are filled per run
  std::filesystem::path out = "fda-out";
  int jobs = 1;
  bool seedless = false;

  std::int64_t budget_for(std::size_t dimension) const {
    return budget_multiplier * static_cast<std::int64_t>(dimension);
  }

  void validate() const {
    if (budget_multiplier < 1) throw std::invalid_argument("budget multiplier must be at least 1");
    if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
    for (int d : dimensions)
      if (d < 1) throw std::invalid_argument("dimensions must be positive");
    for (int f : functions)
      if (f < 1 || f > 24) throw std::invalid_argument("function ids must lie in 1..24");
    for (int i : instances)
      if (i < 1) throw std::invalid_argument("instance ids must be positive");
    FdaConfig probe = fda;
    probe.bounds = Box::cube(1, -5.0, 5.0);
    probe.validate();
  }
};

/// Parses "1,2,5-8" into a sorted, duplicate-free list. Empty text -> empty list.
inline std::vector<int> parse_id_list(std::string_view text) {
  std::vector<int> out;
  const std::string trimmed = io::trim(text);
  if (trimmed.empty()) return out;
  for (const std::string& raw : io::split(trimmed, ',')) {
    const std::string item = io::trim(raw);
    const auto dash = item.find('-', 1);
    long long lo = 0;
    long long hi = 0;
    if (dash == std::string::npos) {
      if (!io::parse_int(item, lo)) throw std::invalid_argument("bad list item '" + item + "'");
      hi = lo;
    } else if (!io::parse_int(item.substr(0, dash), lo) || !io::parse_int(item.substr(dash + 1), hi) || hi < lo) {
      throw std::invalid_argument("bad range '" + item + "'");
    }
    for (long long v = lo; v <= hi; ++v) out.push_back(static_cast<int>(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline double parse_real_setting(std::string_view key, std::string_view value) {
  double v = 0.0;
  if (!io::parse_double(io::trim(value), v)) throw std::invalid_argument(std::string(key) + ": not a number");
  return v;
}

inline long long parse_int_setting(std::string_view key, std::string_view value) {
  long long v = 0;
  if (!io::parse_int(io::trim(value), v)) throw std::invalid_argument(std::string(key) + ": not an integer");
  return v;
}

/// Applies one setting by name. Keys match the CLI flags with '_' or '-'.
inline void apply_setting(ExperimentPlan& plan, std::string key, std::string_view value) {
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "dims" || key == "dimensions") plan.dimensions = parse_id_list(value);
  else if (key == "functions") plan.functions = parse_id_list(value);
  else if (key == "instances") plan.instances = parse_id_list(value);
  else if (key == "budget_multiplier") plan.budget_multiplier = parse_int_setting(key, value);
  else if (key == "depth") plan.fda.max_depth = static_cast<int>(parse_int_setting(key, value));
  else if (key == "alpha") plan.fda.geometry.alpha = parse_real_setting(key, value);
  else if (key == "inflation") plan.fda.geometry.inflation_coefficient = parse_real_setting(key, value);
  else if (key == "ratio") plan.fda.geometry.child_radius_ratio = parse_real_setting(key, value);
  else if (key == "omega_min") plan.fda.omega_min = parse_real_setting(key, value);
  else if (key == "out") plan.out = io::trim(value);
  else if (key == "jobs") plan.jobs = static_cast<int>(parse_int_setting(key, value));
  else if (key == "order") {
    const std::string v = io::trim(value);
    if (v == "descending") plan.fda.order = QualityOrder::Descending;
    else if (v == "ascending") plan.fda.order = QualityOrder::Ascending;
    else throw std::invalid_argument("order: expected ascending or descending");
  } else if (key == "seedless") {
    const std::string v = io::trim(value);
    plan.seedless = v == "true" || v == "1" || v == "yes";
  } else {
    throw std::invalid_argument("unknown setting '" + key + "'");
  }
}

/// Plain-text "key = value" lines; '#' starts a comment.
inline void apply_config_text(ExperimentPlan& plan, std::string_view text, std::string_view source = "config") {
  std::size_t line_no = 0;
  for (const std::string& raw : io::split(text, '\n')) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = io::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(std::string(source) + ":" + std::to_string(line_no) + ": expected key = value");
    try {
      apply_setting(plan, io::trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string(source) + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

/// Resolved configuration as recorded in the manifest. The output directory
/// is left out so relocating an experiment does not change its hash.
inline nlohmann::json plan_to_json(const ExperimentPlan& plan) {
  return nlohmann::json{
      {"dimensions", plan.dimensions},
      {"functions", plan.functions},
      {"instances", plan.instances},
      {"budget_multiplier", plan.budget_multiplier},
      {"depth", plan.fda.max_depth},
      {"alpha", io::format_double(plan.fda.geometry.alpha)},
      {"inflation", io::format_double(plan.fda.geometry.inflation_coefficient)},
      {"ratio", io::format_double(plan.fda.geometry.child_radius_ratio)},
      {"distance_epsilon", io::format_double(plan.fda.geometry.distance_epsilon)},
      {"omega_min", io::format_double(plan.fda.omega_min)},
      {"order", plan.fda.order == QualityOrder::Descending ? "descending" : "ascending"},
      {"bounds", "[-5,5]^D"},
      {"seedless", plan.seedless},
  };
}

}  // namespace fda::runner

#endif  // FDA_PLAN_HPP
