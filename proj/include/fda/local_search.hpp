#ifndef FDA_LOCAL_SEARCH_HPP
#define FDA_LOCAL_SEARCH_HPP

#include <cstddef>
#include <stdexcept>

#include "box.hpp"
#include "evaluation.hpp"
#include "geometry.hpp"

namespace fda {

/// State of the coordinate-wise intensive local search.
struct IlsState {
  Vector current;
  double current_value = 0.0;
  double omega = 0.0;
  bool sweep_improved = false;
  /// Set when the budget ran out part-way through the last sweep.
  bool budget_exhausted = false;
};

/// One pass over the axes in ascending order. For axis i both x + omega*e_i
/// and x - omega*e_i (clamped to `bounds`) are measured and the best of the
/// three points becomes current. On a tie between the two candidates the
/// plus side wins; the current point is kept unless strictly beaten.
inline IlsState ils_sweep(IlsState state, BudgetedObjective& objective, const Box& bounds) {
  if (!(state.omega > 0.0)) throw std::invalid_argument("ils_sweep: omega must be positive");
  state.sweep_improved = false;
  state.budget_exhausted = false;

  for (std::size_t i = 0; i < state.current.size(); ++i) {
    Vector best_candidate;
    double best_candidate_value = 0.0;
    for (const double sign : {1.0, -1.0}) {
      Vector candidate = state.current;
      candidate[i] += sign * state.omega;
      bounds.clamp(candidate);
      // Clamping can collapse a candidate onto the current point.
      if (candidate[i] == state.current[i]) continue;
      const auto value = objective(candidate);
      if (!value) {
        state.budget_exhausted = true;
        break;
      }
      if (best_candidate.empty() || *value < best_candidate_value) {
        best_candidate = std::move(candidate);
        best_candidate_value = *value;
      }
    }
    if (!best_candidate.empty() && best_candidate_value < state.current_value) {
      state.current = std::move(best_candidate);
      state.current_value = best_candidate_value;
      state.sweep_improved = true;
    }
    if (state.budget_exhausted) break;
  }
  return state;
}

/// Repeats sweeps, halving omega after every sweep without improvement,
/// until omega < omega_min or the budget is gone.
inline BestSoFar run_ils(const Vector& start, double start_value, double omega0, double omega_min,
                         BudgetedObjective& objective, const Box& bounds) {
  if (!(omega_min > 0.0)) throw std::invalid_argument("run_ils: omega_min must be positive");
  if (!(omega0 > omega_min)) throw std::invalid_argument("run_ils: omega0 must exceed omega_min");
  if (start.size() != bounds.dimension()) throw std::invalid_argument("run_ils: dimension mismatch");

  IlsState state{start, start_value, omega0, false, false};
  while (state.omega >= omega_min && !objective.exhausted()) {
    state = ils_sweep(std::move(state), objective, bounds);
    if (state.budget_exhausted) break;
    if (!state.sweep_improved) state.omega *= 0.5;
  }
  return BestSoFar{state.current, state.current_value};
}

}  // namespace fda

#endif  // FDA_LOCAL_SEARCH_HPP
