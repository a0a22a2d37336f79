#ifndef FDA_RUN_LOG_HPP
#define FDA_RUN_LOG_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "evaluation.hpp"
#include "io.hpp"
#include "metrics.hpp"
#include "suite.hpp"

namespace fda::runner {

/// Contents of one raw run log.
///
///   # format-version=1
///   # problem=f1_d2_i1
///   # function=1
///   # dimension=2
///   # instance=1
///   # f_opt=<value>
///   # budget=<evaluations>
///   # evaluations_used=<evaluations>
///   # stop=budget|depth-exhausted
///   # best_value=<value>
///   evaluation_index,best_error
///   1,<error>
///   ...
///
/// Only improvement events are listed; best_error = best f so far - f_opt.
struct RunLog {
  metrics::ProblemId problem;
  double f_opt = 0.0;
  std::int64_t budget = 0;
  std::int64_t evaluations_used = 0;
  std::string stop;
  double best_value = 0.0;
  std::vector<TracePoint> points;
};

inline std::string format_run_log(const RunLog& log) {
  std::string out;
  out += io::kVersionLine;
  out += "\n# problem=" + bench::problem_key(log.problem.function_id, log.problem.dimension, log.problem.instance_id);
  out += "\n# function=" + std::to_string(log.problem.function_id);
  out += "\n# dimension=" + std::to_string(log.problem.dimension);
  out += "\n# instance=" + std::to_string(log.problem.instance_id);
  out += "\n# f_opt=" + io::format_double(log.f_opt);
  out += "\n# budget=" + std::to_string(log.budget);
  out += "\n# evaluations_used=" + std::to_string(log.evaluations_used);
  out += "\n# stop=" + log.stop;
  out += "\n# best_value=" + io::format_double(log.best_value);
  out += "\nevaluation_index,best_error\n";
  for (const TracePoint& p : log.points)
    out += std::to_string(p.evaluation) + "," + io::format_double(p.best_error) + "\n";
  return out;
}

/// Parses and validates a run log; errors name the offending line.
inline RunLog parse_run_log(std::string_view text, std::string_view source = "run log") {
  RunLog log;
  const auto lines = io::split(text, '\n');
  bool version_seen = false;
  bool header_seen = false;
  auto fail = [&](std::size_t line, const std::string& what) {
    throw std::runtime_error(std::string(source) + ":" + std::to_string(line) + ": " + what);
  };
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    const std::string line = io::trim(lines[n]);
    if (line.empty()) continue;
    if (line.starts_with("#")) {
      const std::string body = io::trim(std::string_view(line).substr(1));
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = body.substr(0, eq);
      const std::string value = body.substr(eq + 1);
      long long iv = 0;
      double dv = 0.0;
      if (key == "format-version") {
        if (!io::parse_int(value, iv) || iv != io::kFormatVersion) fail(line_no, "unsupported format-version");
        version_seen = true;
      } else if (key == "function") {
        if (!io::parse_int(value, iv)) fail(line_no, "bad function");
        log.problem.function_id = static_cast<int>(iv);
      } else if (key == "dimension") {
        if (!io::parse_int(value, iv) || iv < 1) fail(line_no, "bad dimension");
        log.problem.dimension = static_cast<std::size_t>(iv);
      } else if (key == "instance") {
        if (!io::parse_int(value, iv)) fail(line_no, "bad instance");
        log.problem.instance_id = static_cast<int>(iv);
      } else if (key == "f_opt") {
        if (!io::parse_double(value, dv)) fail(line_no, "bad f_opt");
        log.f_opt = dv;
      } else if (key == "budget") {
        if (!io::parse_int(value, iv)) fail(line_no, "bad budget");
        log.budget = iv;
      } else if (key == "evaluations_used") {
        if (!io::parse_int(value, iv)) fail(line_no, "bad evaluations_used");
        log.evaluations_used = iv;
      } else if (key == "stop") {
        log.stop = value;
      } else if (key == "best_value") {
        if (!io::parse_double(value, dv)) fail(line_no, "bad best_value");
        log.best_value = dv;
      }
      continue;
    }
    if (!header_seen) {
      if (line != "evaluation_index,best_error") fail(line_no, "expected column header");
      header_seen = true;
      continue;
    }
    const auto fields = io::split(line, ',');
    long long idx = 0;
    double err = 0.0;
    if (fields.size() != 2 || !io::parse_int(fields[0], idx) || !io::parse_double(fields[1], err))
      fail(line_no, "malformed row");
    if (!log.points.empty()) {
      if (idx <= log.points.back().evaluation) fail(line_no, "evaluation index not increasing");
      if (err > log.points.back().best_error) fail(line_no, "best_error increased");
    }
    log.points.push_back({idx, err});
  }
  if (!version_seen) fail(1, "missing format-version");
  if (!header_seen) fail(lines.size(), "missing column header");
  if (log.points.empty()) fail(lines.size(), "no trace rows");
  if (log.evaluations_used > log.budget) fail(1, "evaluations_used exceeds budget");
  if (log.points.back().evaluation > log.evaluations_used) fail(1, "trace runs past evaluations_used");
  return log;
}

inline metrics::RunRecord record_from_log(const RunLog& log, const metrics::TargetSet& targets) {
  return metrics::runtimes_from_trace(log.points, log.evaluations_used, targets, log.problem);
}

}  // namespace fda::runner

#endif  // FDA_RUN_LOG_HPP
