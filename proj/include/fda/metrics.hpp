#ifndef FDA_METRICS_HPP
#define FDA_METRICS_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "evaluation.hpp"
#include "rng.hpp"

namespace fda::metrics {

inline constexpr double kInfiniteRuntime = std::numeric_limits<double>::infinity();

/// Objective-error thresholds, strictly descending and positive.
struct TargetSet {
  std::vector<double> precisions;

  void validate() const {
    if (precisions.empty()) throw std::invalid_argument("target set is empty");
    for (std::size_t i = 0; i < precisions.size(); ++i) {
      if (!(precisions[i] > 0.0)) throw std::invalid_argument("target precisions must be positive");
      if (i > 0 && !(precisions[i] < precisions[i - 1]))
        throw std::invalid_argument("target precisions must be strictly descending");
    }
  }

  /// 51 log-uniform precisions 1e2, 10^1.8, ..., 1e-8.
  static TargetSet standard() {
    TargetSet t;
    for (int j = 0; j <= 50; ++j) t.precisions.push_back(std::pow(10.0, 2.0 - 0.2 * j));
    return t;
  }
};

/// Evaluations-per-dimension grid, 1 to 1e3 with 20 points per decade.
inline std::vector<double> standard_budget_grid() {
  std::vector<double> grid;
  for (int j = 0; j <= 60; ++j) grid.push_back(std::pow(10.0, j / 20.0));
  return grid;
}

struct ProblemId {
  int function_id = 0;
  std::size_t dimension = 0;
  int instance_id = 0;

  auto operator<=>(const ProblemId&) const = default;
};

struct TargetHit {
  double precision = 0.0;
  /// First evaluation with best_error <= precision; empty when never reached.
  std::optional<std::int64_t> evaluation;

  bool operator==(const TargetHit&) const = default;
};

struct RunRecord {
  ProblemId problem;
  std::vector<TargetHit> hits;
  std::int64_t total_evaluations = 0;

  /// RT^s for a hit target, RT^us (the whole run) otherwise.
  std::int64_t runtime(std::size_t target_index) const {
    return hits.at(target_index).evaluation.value_or(total_evaluations);
  }
  bool success(std::size_t target_index) const { return hits.at(target_index).evaluation.has_value(); }

  std::size_t target_index(double precision) const {
    for (std::size_t i = 0; i < hits.size(); ++i)
      if (hits[i].precision == precision) return i;
    throw std::invalid_argument("record has no target " + std::to_string(precision));
  }

  bool operator==(const RunRecord&) const = default;
};

/// Scans the improvement trace once per target. `total_evaluations` is the
/// whole run length, charged to targets that are never reached.
inline RunRecord runtimes_from_trace(std::span<const TracePoint> trace, std::int64_t total_evaluations,
                                     const TargetSet& targets, ProblemId problem = {}) {
  if (trace.empty()) throw std::invalid_argument("runtimes_from_trace: empty trace");
  targets.validate();
  RunRecord rec{problem, {}, total_evaluations};
  for (const double precision : targets.precisions) {
    TargetHit hit{precision, std::nullopt};
    for (const TracePoint& p : trace) {
      if (p.best_error <= precision) {
        hit.evaluation = p.evaluation;
        break;
      }
    }
    rec.hits.push_back(hit);
  }
  return rec;
}

inline RunRecord runtimes_from_trace(const RunTrace& trace, const TargetSet& targets, ProblemId problem = {}) {
  return runtimes_from_trace(trace.points, trace.evaluations_used, targets, problem);
}

/// Fixed-target totals of one (function, dimension, target) cell.
struct AggregateStats {
  int function_id = 0;
  std::size_t dimension = 0;
  double precision = 0.0;
  std::int64_t successes = 0;
  std::int64_t failures = 0;
  std::int64_t evaluations = 0;  // #FEs
  double average_runtime = kInfiniteRuntime;
  double success_probability = 0.0;
};

inline AggregateStats aggregate(std::span<const RunRecord> records, double precision) {
  if (records.empty()) throw std::invalid_argument("aggregate: no records");
  AggregateStats s;
  s.function_id = records.front().problem.function_id;
  s.dimension = records.front().problem.dimension;
  s.precision = precision;
  for (const RunRecord& r : records) {
    const std::size_t t = r.target_index(precision);
    s.evaluations += r.runtime(t);
    if (r.success(t)) ++s.successes;
    else ++s.failures;
  }
  if (s.successes > 0)
    s.average_runtime = static_cast<double>(s.evaluations) / static_cast<double>(s.successes);
  s.success_probability = static_cast<double>(s.successes) / static_cast<double>(s.successes + s.failures);
  return s;
}

/// aRT = (sum RT^s + sum RT^us) / n_s; +inf when nothing succeeded.
inline double art(std::span<const RunRecord> records, double precision) {
  return aggregate(records, precision).average_runtime;
}

/// Draws restart-runtime samples: pick records uniformly with replacement,
/// charging every unsuccessful draw's full length until a successful draw,
/// whose hit time closes the sample.
inline std::vector<double> simulate_restart_runtime(std::span<const RunRecord> records, double precision,
                                                    std::uint64_t seed, std::size_t n_samples) {
  if (records.empty()) throw std::invalid_argument("simulate_restart_runtime: no records");
  std::vector<std::size_t> index(records.size());
  bool any_success = false;
  for (std::size_t i = 0; i < records.size(); ++i) {
    index[i] = records[i].target_index(precision);
    any_success = any_success || records[i].success(index[i]);
  }
  if (!any_success) throw std::invalid_argument("simulate_restart_runtime: success probability is zero");

  SplitMix64 rng(seed);
  std::vector<double> samples;
  samples.reserve(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) {
    double total = 0.0;
    while (true) {
      const std::size_t pick = rng.below(records.size());
      total += static_cast<double>(records[pick].runtime(index[pick]));
      if (records[pick].success(index[pick])) break;
    }
    samples.push_back(total);
  }
  return samples;
}

/// Fraction of (run, target) pairs reached within b*D evaluations, for every
/// b in `budget_grid`. All records must share one dimension.
inline std::vector<double> ecdf(std::span<const RunRecord> records, const TargetSet& targets,
                                std::span<const double> budget_grid) {
  if (records.empty()) throw std::invalid_argument("ecdf: empty group");
  targets.validate();
  for (std::size_t i = 0; i < budget_grid.size(); ++i) {
    if (!(budget_grid[i] > 0.0)) throw std::invalid_argument("ecdf: budget grid must be positive");
    if (i > 0 && !(budget_grid[i] > budget_grid[i - 1]))
      throw std::invalid_argument("ecdf: budget grid must be ascending");
  }
  const std::size_t dim = records.front().problem.dimension;
  std::vector<std::int64_t> hit_times;
  std::size_t pairs = 0;
  for (const RunRecord& r : records) {
    if (r.problem.dimension != dim) throw std::invalid_argument("ecdf: mixed dimensions in one group");
    for (const double precision : targets.precisions) {
      ++pairs;
      const auto& hit = r.hits.at(r.target_index(precision));
      if (hit.evaluation) hit_times.push_back(*hit.evaluation);
    }
  }
  std::vector<double> curve;
  curve.reserve(budget_grid.size());
  for (const double b : budget_grid) {
    const double limit = b * static_cast<double>(dim);
    std::size_t count = 0;
    for (const std::int64_t t : hit_times)
      if (static_cast<double>(t) <= limit) ++count;
    curve.push_back(static_cast<double>(count) / static_cast<double>(pairs));
  }
  return curve;
}

}  // namespace fda::metrics

#endif  // FDA_METRICS_HPP
