#ifndef FDA_EVALUATION_HPP
#define FDA_EVALUATION_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "geometry.hpp"

namespace fda {

using ObjectiveFn = std::function<double(std::span<const double>)>;

struct TracePoint {
  std::int64_t evaluation = 0;  // 1-based
  double best_error = 0.0;

  bool operator==(const TracePoint&) const = default;
};

/// Improvement history of one run: a point is recorded at the first
/// evaluation and at every evaluation that strictly lowers the best value.
struct RunTrace {
  std::vector<TracePoint> points;
  BestSoFar best;
  std::int64_t evaluations_used = 0;
  std::int64_t budget = 0;
};

/// Counting, budget-enforcing wrapper around an objective. Tracks the
/// best-so-far and the improvement trace. Returns std::nullopt once the
/// budget is spent; the objective is never called past the budget.
class BudgetedObjective {
 public:
  using Observer = std::function<void(std::int64_t index, std::span<const double> x, double fx)>;

  BudgetedObjective(ObjectiveFn f, std::int64_t budget, double f_opt = 0.0)
      : f_(std::move(f)), budget_(budget), f_opt_(f_opt) {
    if (budget < 1) throw std::invalid_argument("budget must be at least 1");
  }

  std::optional<double> operator()(std::span<const double> x) {
    if (exhausted()) return std::nullopt;
    const double fx = f_(x);
    ++used_;
    if (observer_) observer_(used_, x, fx);
    if (best_.offer(x, fx)) trace_.push_back({used_, fx - f_opt_});
    return fx;
  }

  bool exhausted() const { return used_ >= budget_; }
  std::int64_t used() const { return used_; }
  std::int64_t budget() const { return budget_; }
  std::int64_t remaining() const { return budget_ - used_; }
  const BestSoFar& best() const { return best_; }

  /// Called after every evaluation with (index, point, value).
  void set_observer(Observer obs) { observer_ = std::move(obs); }

  RunTrace trace() const { return RunTrace{trace_, best_, used_, budget_}; }

 private:
  ObjectiveFn f_;
  std::int64_t budget_;
  double f_opt_;
  std::int64_t used_ = 0;
  BestSoFar best_;
  std::vector<TracePoint> trace_;
  Observer observer_;
};

}  // namespace fda

#endif  // FDA_EVALUATION_HPP
