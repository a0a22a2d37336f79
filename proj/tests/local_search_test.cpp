#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fda/local_search.hpp"
#include "test_util.hpp"

namespace fda {
namespace {

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

TEST(IlsSweep, SphereMovesOneStep) {
  BudgetedObjective obj(sphere, 1000);
  const Box box = Box::cube(2, -5, 5);
  const IlsState out = ils_sweep({{3.0, 0.0}, 9.0, 1.0, false}, obj, box);
  EXPECT_EQ(out.current, (Vector{2.0, 0.0}));
  EXPECT_EQ(out.current_value, 4.0);
  EXPECT_TRUE(out.sweep_improved);
  EXPECT_EQ(obj.used(), 4);
}

TEST(IlsSweep, OptimumIsAFixedPoint) {
  BudgetedObjective obj(sphere, 1000);
  const IlsState out = ils_sweep({{0.0, 0.0}, 0.0, 1.0, false}, obj, Box::cube(2, -5, 5));
  EXPECT_EQ(out.current, (Vector{0.0, 0.0}));
  EXPECT_FALSE(out.sweep_improved);
}

TEST(IlsSweep, OffsetQuadraticKeepsCurrent) {
  auto f = [](std::span<const double> x) { return (x[0] - 0.3) * (x[0] - 0.3); };
  std::vector<double> seen;
  BudgetedObjective obj(f, 1000);
  obj.set_observer([&](std::int64_t, std::span<const double>, double fx) { seen.push_back(fx); });
  const IlsState out = ils_sweep({{0.0}, 0.09, 1.0, false}, obj, Box::cube(1, -5, 5));
  ASSERT_EQ(seen.size(), 2u);
  EXPECT_NEAR(seen[0], 0.49, 1e-15);
  EXPECT_NEAR(seen[1], 1.69, 1e-15);
  EXPECT_EQ(out.current, Vector{0.0});
  EXPECT_FALSE(out.sweep_improved);
}

TEST(IlsSweep, PlusSideWinsTies) {
  auto f = [](std::span<const double> x) { return -std::abs(x[0]); };
  BudgetedObjective obj(f, 100);
  const IlsState out = ils_sweep({{0.0}, 0.0, 1.0, false}, obj, Box::cube(1, -5, 5));
  EXPECT_EQ(out.current, Vector{1.0});
}

TEST(IlsSweep, CandidatesAreClamped) {
  std::vector<Vector> points;
  BudgetedObjective obj(sphere, 100);
  obj.set_observer([&](std::int64_t, std::span<const double> x, double) { points.emplace_back(x.begin(), x.end()); });
  const Box box = Box::cube(2, -1, 1);
  ils_sweep({{0.5, -0.5}, 0.5, 4.0, false}, obj, box);
  for (const auto& p : points) EXPECT_TRUE(box.contains(p));
}

TEST(IlsSweep, StopsMidSweepOnBudget) {
  BudgetedObjective obj(sphere, 3);
  const IlsState out = ils_sweep({{3.0, 3.0}, 18.0, 1.0, false}, obj, Box::cube(2, -5, 5));
  EXPECT_TRUE(out.budget_exhausted);
  EXPECT_EQ(obj.used(), 3);
  EXPECT_EQ(out.current, (Vector{2.0, 3.0}));
}

TEST(RunIls, SphereConvergesFromThreeFour) {
  BudgetedObjective obj(sphere, 100000);
  const BestSoFar best = run_ils({3.0, 4.0}, 25.0, 4.0, 1e-6, obj, Box::cube(2, -5, 5));
  EXPECT_LE(std::sqrt(sphere(best.position)), 1e-5);
  // Brute-force cross-check: no point of a fine grid around the answer is
  // better by more than the grid can resolve.
  double grid_best = INFINITY;
  for (int i = -50; i <= 50; ++i)
    for (int j = -50; j <= 50; ++j) {
      const Vector p{best.position[0] + i * 1e-6, best.position[1] + j * 1e-6};
      grid_best = std::min(grid_best, sphere(p));
    }
  EXPECT_LE(best.value, grid_best + 1e-10);
}

TEST(RunIls, RejectsOmegaBelowTolerance) {
  BudgetedObjective obj(sphere, 10);
  EXPECT_THROW(run_ils({0.0}, 0.0, 1.0, 2.0, obj, Box::cube(1, -5, 5)), std::invalid_argument);
}

TEST(RunIls, SingleEvaluationBudget) {
  BudgetedObjective obj(sphere, 1);
  const BestSoFar best = run_ils({3.0, 0.0}, 9.0, 1.0, 1e-3, obj, Box::cube(2, -5, 5));
  EXPECT_EQ(obj.used(), 1);
  EXPECT_EQ(best.position, (Vector{3.0, 0.0}));
  EXPECT_EQ(best.value, 9.0);

  BudgetedObjective improving(sphere, 1);
  const BestSoFar b2 = run_ils({-3.0, 0.0}, 9.0, 1.0, 1e-3, improving, Box::cube(2, -5, 5));
  EXPECT_EQ(b2.position, (Vector{-2.0, 0.0}));
  EXPECT_EQ(b2.value, 4.0);
}

TEST(RunIls, Properties) {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 1 + gen() % 5;
    const Vector target = ::fda::testing::random_vector(gen, dim, -3, 3);
    auto f = [&](std::span<const double> x) {
      double s = 0.0;
      for (std::size_t d = 0; d < x.size(); ++d) s += (x[d] - target[d]) * (x[d] - target[d]);
      return s;
    };
    const Box box = Box::cube(dim, -5, 5);
    const Vector start = ::fda::testing::random_vector(gen, dim, -5, 5);
    const double start_value = f(start);
    const double omega_min = 1e-7;

    BudgetedObjective obj(f, 1000000);
    std::int64_t last = 0;
    bool sweep_bound_ok = true;
    obj.set_observer([&](std::int64_t, std::span<const double> x, double) {
      EXPECT_TRUE(box.contains(x));
    });
    // Per-sweep evaluation bound, checked on a manual sweep loop.
    IlsState s{start, start_value, 2.0, false};
    for (int k = 0; k < 5; ++k) {
      s = ils_sweep(s, obj, box);
      sweep_bound_ok = sweep_bound_ok && obj.used() - last <= static_cast<std::int64_t>(2 * dim);
      last = obj.used();
    }
    EXPECT_TRUE(sweep_bound_ok);

    BudgetedObjective fresh(f, 1000000);
    const BestSoFar best = run_ils(start, start_value, 2.0, omega_min, fresh, box);
    EXPECT_LE(best.value, start_value);
    for (std::size_t d = 0; d < dim; ++d) EXPECT_LT(std::abs(best.position[d] - target[d]), 2 * omega_min);
  }
}

}  // namespace
}  // namespace fda
