#ifndef FDA_DRIVER_HPP
#define FDA_DRIVER_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "box.hpp"
#include "evaluation.hpp"
#include "geometry.hpp"
#include "local_search.hpp"

namespace fda {

/// Extraction order of a frontier level by quality.
enum class QualityOrder { Descending, Ascending };

struct FdaConfig {
  int max_depth = 2;
  GeometryParams geometry;
  double omega_min = 1e-10;
  std::int64_t budget = 1000;
  QualityOrder order = QualityOrder::Descending;
  Box bounds;

  void validate() const {
    if (budget < 1) throw std::invalid_argument("config: budget must be at least 1");
    if (max_depth < 1) throw std::invalid_argument("config: max_depth must be at least 1");
    if (!(omega_min > 0.0)) throw std::invalid_argument("config: omega_min must be positive");
    if (!(geometry.alpha > 0.0 && geometry.alpha <= 1.0))
      throw std::invalid_argument("config: alpha must lie in (0, 1]");
    if (!(geometry.child_radius_ratio > 0.0 && geometry.child_radius_ratio < 1.0))
      throw std::invalid_argument("config: child radius ratio must lie in (0, 1)");
    if (!(geometry.inflation_coefficient >= 1.0))
      throw std::invalid_argument("config: inflation coefficient must be >= 1");
    bounds.validate();
  }
};

/// Per-level queues of scored, undecomposed hyperspheres. Levels are
/// served strictly in order; within a level the configured quality order
/// applies and ties go to the earliest insertion. The +inf sentinel sorts
/// first under either order.
class Frontier {
 public:
  explicit Frontier(QualityOrder order = QualityOrder::Descending) : order_(order) {}

  void push(Hypersphere h) {
    if (!h.quality) throw std::invalid_argument("frontier: hypersphere has no quality");
    if (h.level < 0) throw std::invalid_argument("frontier: negative level");
    const auto level = static_cast<std::size_t>(h.level);
    if (level < current_level_) throw std::logic_error("frontier: insertion below the current level");
    if (levels_.size() <= level) levels_.resize(level + 1);
    const double key = priority(*h.quality);
    levels_[level].push(Entry{key, next_seq_++, std::move(h)});
    ++size_;
  }

  /// Removes the next hypersphere, advancing the level when the current
  /// one is empty. Precondition: !empty().
  Hypersphere pop() {
    if (empty()) throw std::logic_error("frontier: pop from empty frontier");
    while (levels_[current_level_].empty()) ++current_level_;
    Hypersphere h = levels_[current_level_].top().sphere;
    levels_[current_level_].pop();
    --size_;
    return h;
  }

  bool empty() const { return size_ == 0; }
  std::size_t size() const { return size_; }
  std::size_t current_level() const { return current_level_; }

 private:
  struct Entry {
    double key;
    std::uint64_t seq;
    Hypersphere sphere;
  };
  struct Lower {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.key != b.key) return a.key < b.key;
      return a.seq > b.seq;
    }
  };

  double priority(double q) const {
    if (q == kContainsBestQuality || order_ == QualityOrder::Descending) return q;
    return -q;
  }

  QualityOrder order_;
  std::vector<std::priority_queue<Entry, std::vector<Entry>, Lower>> levels_;
  std::size_t current_level_ = 0;
  std::size_t size_ = 0;
  std::uint64_t next_seq_ = 0;
};

/// Smallest hypersphere enclosing the box: centered, radius = half the
/// widest extent times sqrt(D).
inline Hypersphere make_root(const Box& bounds) {
  bounds.validate();
  const std::size_t dim = bounds.dimension();
  Hypersphere root;
  root.center.resize(dim);
  double half_width = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    root.center[d] = 0.5 * (bounds.lower[d] + bounds.upper[d]);
    half_width = std::max(half_width, 0.5 * (bounds.upper[d] - bounds.lower[d]));
  }
  root.radius = half_width * std::sqrt(static_cast<double>(dim));
  root.level = 0;
  return root;
}

enum class StopReason { Continue, Budget, DepthExhausted };

struct DriverState {
  std::int64_t evaluations_used = 0;
  std::int64_t budget = 0;
  bool frontier_empty = false;
};

inline StopReason stopping_check(const DriverState& s) {
  if (s.evaluations_used >= s.budget) return StopReason::Budget;
  if (s.frontier_empty) return StopReason::DepthExhausted;
  return StopReason::Continue;
}

/// Hooks for tests and diagnostics; the default does nothing.
struct DriverEvents {
  std::function<void(const Hypersphere&, std::int64_t evaluations_used)> on_decompose;
  std::function<void(const Hypersphere&, std::int64_t evaluations_used)> on_exploit;
  BudgetedObjective::Observer on_evaluation;
};

struct OptimizeResult {
  RunTrace trace;
  StopReason reason = StopReason::Continue;
};

/// Fractal decomposition search over `config.bounds`.
///
/// The root center is measured first. Hyperspheres are then taken level by
/// level from the frontier; a sphere above the maximum depth is split into
/// 2*D inflated children, each scored with three measurements (s1, s2,
/// center, all clamped into the box), and a sphere at the maximum depth is
/// handed to the local search starting from its center with step = radius.
inline OptimizeResult optimize(ObjectiveFn objective, const FdaConfig& config, double f_opt = 0.0,
                               const DriverEvents& events = {}) {
  config.validate();
  const Box& bounds = config.bounds;
  const GeometryParams& geo = config.geometry;

  BudgetedObjective eval(std::move(objective), config.budget, f_opt);
  if (events.on_evaluation) eval.set_observer(events.on_evaluation);

  OptimizeResult result;
  auto finish = [&](StopReason reason) {
    result.trace = eval.trace();
    result.reason = reason;
    return result;
  };

  Hypersphere root = make_root(bounds);
  const Vector root_point = bounds.clamped(root.center);
  const auto root_value = eval(root_point);
  if (!root_value) return finish(StopReason::Budget);
  root.quality = 0.0;
  root.center_value = *root_value;

  Frontier frontier(config.order);
  frontier.push(std::move(root));

  while (true) {
    const StopReason reason = stopping_check({eval.used(), eval.budget(), frontier.empty()});
    if (reason != StopReason::Continue) return finish(reason);

    Hypersphere sphere = frontier.pop();

    if (sphere.level >= config.max_depth) {
      if (events.on_exploit) events.on_exploit(sphere, eval.used());
      if (!(sphere.radius > config.omega_min)) continue;
      // The center was measured while scoring; reuse that value.
      const Vector start = bounds.clamped(sphere.center);
      const double start_value = sphere.center_value.value();
      run_ils(start, start_value, sphere.radius, config.omega_min, eval, bounds);
      continue;
    }

    if (events.on_decompose) events.on_decompose(sphere, eval.used());
    std::vector<Hypersphere> children = decompose(sphere, geo.child_radius_ratio);
    for (Hypersphere& child : children) {
      child.radius = inflate(child.radius, geo.inflation_coefficient);
      auto [s1, s2] = probe_points(child, geo.alpha);
      bounds.clamp(s1);
      bounds.clamp(s2);
      const Vector c = bounds.clamped(child.center);

      const auto f1 = eval(s1);
      if (!f1) return finish(StopReason::Budget);
      const auto f2 = eval(s2);
      if (!f2) return finish(StopReason::Budget);
      const auto fc = eval(c);
      if (!fc) return finish(StopReason::Budget);

      score_quality(child, *f1, *f2, *fc, s1, s2, c, eval.best(), geo.distance_epsilon);
      child.center_value = *fc;
      frontier.push(std::move(child));
    }
  }
}

}  // namespace fda

#endif  // FDA_DRIVER_HPP
