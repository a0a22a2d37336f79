#ifndef FDA_OPTIMIZE_INSTANCE_HPP
#define FDA_OPTIMIZE_INSTANCE_HPP

#include <span>
#include <stdexcept>

#include "driver.hpp"
#include "suite.hpp"

namespace fda {

/// Runs FDA on a benchmark instance. Empty config bounds default to the
/// instance domain; errors in the trace are relative to the instance f_opt.
inline OptimizeResult optimize(bench::ProblemInstance& instance, FdaConfig config, const DriverEvents& events = {}) {
  if (config.bounds.lower.empty()) config.bounds = instance.bounds();
  if (config.bounds.dimension() != instance.dimension())
    throw std::invalid_argument("optimize: instance dimension does not match config bounds");
  return optimize([&instance](std::span<const double> x) { return instance.evaluate(x); }, config,
                  instance.f_opt(), events);
}

}  // namespace fda

#endif  // FDA_OPTIMIZE_INSTANCE_HPP
