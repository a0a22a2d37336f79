#ifndef FDA_FDA_HPP
#define FDA_FDA_HPP

#include "box.hpp"
#include "driver.hpp"
#include "evaluation.hpp"
#include "experiment.hpp"
#include "geometry.hpp"
#include "io.hpp"
#include "local_search.hpp"
#include "metrics.hpp"
#include "optimize_instance.hpp"
#include "plan.hpp"
#include "plot.hpp"
#include "reference.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "run_log.hpp"
#include "suite.hpp"

#endif  // FDA_FDA_HPP
