#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "fda/driver.hpp"
#include "fda/optimize_instance.hpp"
#include "fda/suite.hpp"

namespace fda {
namespace {

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

FdaConfig config_for(std::size_t dim, int depth, std::int64_t budget) {
  FdaConfig c;
  c.max_depth = depth;
  c.budget = budget;
  c.bounds = Box::cube(dim, -5, 5);
  return c;
}

TEST(MakeRoot, Examples) {
  const auto sq = make_root(Box::cube(2, -5, 5));
  EXPECT_EQ(sq.center, (Vector{0.0, 0.0}));
  EXPECT_DOUBLE_EQ(sq.radius, 5.0 * std::sqrt(2.0));
  EXPECT_EQ(sq.level, 0);

  const auto line = make_root(Box::cube(1, -5, 5));
  EXPECT_EQ(line.center, Vector{0.0});
  EXPECT_EQ(line.radius, 5.0);

  const auto cube = make_root(Box::cube(3, 0, 1));
  EXPECT_EQ(cube.center, (Vector{0.5, 0.5, 0.5}));
  EXPECT_DOUBLE_EQ(cube.radius, 0.5 * std::sqrt(3.0));

  EXPECT_THROW(make_root(Box{{0.0}, {0.0}}), std::invalid_argument);
}

TEST(StoppingCheck, Cases) {
  EXPECT_EQ(stopping_check({100, 100, false}), StopReason::Budget);
  EXPECT_EQ(stopping_check({10, 100, true}), StopReason::DepthExhausted);
  EXPECT_EQ(stopping_check({10, 100, false}), StopReason::Continue);
}

Hypersphere scored(double q, int level = 1) {
  Hypersphere h{{0.0}, 1.0, level};
  h.quality = q;
  return h;
}

TEST(Frontier, DescendingWithInsertionTieBreak) {
  Frontier f;
  auto a = scored(1.0);
  a.center = {1};
  auto b = scored(3.0);
  b.center = {2};
  auto c = scored(3.0);
  c.center = {3};
  f.push(a);
  f.push(b);
  f.push(c);
  EXPECT_EQ(f.pop().center, Vector{2});
  EXPECT_EQ(f.pop().center, Vector{3});
  EXPECT_EQ(f.pop().center, Vector{1});
  EXPECT_TRUE(f.empty());
}

TEST(Frontier, LevelsServedInOrder) {
  Frontier f(QualityOrder::Ascending);
  f.push(scored(5.0, 2));
  f.push(scored(9.0, 1));
  f.push(scored(kContainsBestQuality, 1));
  f.push(scored(-1.0, 1));
  EXPECT_EQ(f.pop().quality, kContainsBestQuality);
  EXPECT_EQ(f.pop().quality, -1.0);
  EXPECT_EQ(f.pop().quality, 9.0);
  EXPECT_EQ(f.current_level(), 1u);
  EXPECT_EQ(f.pop().level, 2);
  EXPECT_EQ(f.current_level(), 2u);
  EXPECT_THROW(f.push(scored(1.0, 1)), std::logic_error);
}

TEST(Frontier, RejectsUnscored) {
  Frontier f;
  EXPECT_THROW(f.push(Hypersphere{{0.0}, 1.0, 0}), std::invalid_argument);
}

TEST(Optimize, DepthOneSphereTrace) {
  std::vector<std::int64_t> exploit_at;
  std::vector<double> exploit_quality;
  DriverEvents ev;
  ev.on_exploit = [&](const Hypersphere& h, std::int64_t used) {
    exploit_at.push_back(used);
    exploit_quality.push_back(*h.quality);
  };
  const auto result = optimize(sphere, config_for(2, 1, 1000), 0.0, ev);
  ASSERT_FALSE(exploit_at.empty());
  // 1 root-center evaluation + 4 children x 3 probes before any ILS.
  EXPECT_EQ(exploit_at.front(), 13);
  for (std::size_t i = 1; i < exploit_quality.size(); ++i) EXPECT_GE(exploit_quality[i - 1], exploit_quality[i]);
  EXPECT_LE(result.trace.evaluations_used, 1000);
}

TEST(Optimize, TinyBudgetStopsWhileScoring) {
  std::int64_t calls = 0;
  auto f = [&](std::span<const double> x) {
    ++calls;
    return sphere(x);
  };
  const auto result = optimize(f, config_for(2, 3, 3));
  EXPECT_EQ(result.trace.evaluations_used, 3);
  EXPECT_EQ(calls, 3);
  EXPECT_EQ(result.reason, StopReason::Budget);
}

// Hand computation for f(x) = x on [-5, 5], k = 1: root center 0, r = 5;
// children at -2.5 and +2.5 with inflated radius 4.375 and probe offset
// 0.4375. Child (-2.5): s1 = -2.0625, s2 = -2.9375 (new BSF), c = -2.5,
// q = max(-2.0625 / 0.875, excluded, -2.5 / 0.4375) = -2.357...
// Child (+2.5): q = max(2.9375/5.875, 2.0625/5, 2.5/5.4375) = 0.5.
double oracle_quality(double s1, double s2, double c, double bsf) {
  double q = -INFINITY;
  for (double x : {s1, s2, c})
    if (std::abs(x - bsf) >= 1e-12) q = std::max(q, x / std::abs(x - bsf));
  return q;
}

TEST(Optimize, OneDimensionalLinearExtractionOrder) {
  const double q_minus = oracle_quality(-2.0625, -2.9375, -2.5, -2.9375);
  const double q_plus = oracle_quality(2.9375, 2.0625, 2.5, -2.9375);
  EXPECT_NEAR(q_minus, -2.0625 / 0.875, 1e-12);
  EXPECT_NEAR(q_plus, 0.5, 1e-12);

  auto linear = [](std::span<const double> x) { return x[0]; };
  for (const auto order : {QualityOrder::Ascending, QualityOrder::Descending}) {
    std::vector<Hypersphere> exploited;
    DriverEvents ev;
    ev.on_exploit = [&](const Hypersphere& h, std::int64_t) { exploited.push_back(h); };
    FdaConfig cfg = config_for(1, 1, 200);
    cfg.order = order;
    optimize(linear, cfg, 0.0, ev);
    ASSERT_GE(exploited.size(), 1u);
    if (order == QualityOrder::Ascending) {
      EXPECT_EQ(exploited.front().center, Vector{-2.5});
      EXPECT_NEAR(*exploited.front().quality, q_minus, 1e-12);
    } else {
      EXPECT_EQ(exploited.front().center, Vector{2.5});
      EXPECT_NEAR(*exploited.front().quality, q_plus, 1e-12);
    }
  }
}

TEST(Optimize, DeterministicAndBudgetExact) {
  for (const int fid : {1, 3, 8, 15, 21}) {
    auto a = bench::make_instance(fid, 5, 3);
    auto b = bench::make_instance(fid, 5, 3);
    FdaConfig cfg;
    cfg.budget = 5000;
    const auto ra = optimize(a, cfg);
    const auto rb = optimize(b, cfg);
    EXPECT_EQ(ra.trace.points, rb.trace.points);
    EXPECT_EQ(ra.trace.best.position, rb.trace.best.position);
    EXPECT_LE(ra.trace.evaluations_used, 5000);
    EXPECT_EQ(a.evaluations_used(), ra.trace.evaluations_used);
  }
}

TEST(Optimize, TraceMatchesFullEvaluationLog) {
  auto inst = bench::make_instance(15, 3, 2);
  std::vector<double> values;
  std::vector<Vector> points;
  DriverEvents ev;
  ev.on_evaluation = [&](std::int64_t, std::span<const double> x, double fx) {
    values.push_back(fx);
    points.emplace_back(x.begin(), x.end());
  };
  FdaConfig cfg;
  cfg.budget = 3000;
  const auto result = optimize(inst, cfg, ev);

  std::vector<TracePoint> rebuilt;
  double best = INFINITY;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] < best) {
      best = values[i];
      rebuilt.push_back({static_cast<std::int64_t>(i + 1), best - inst.f_opt()});
    }
  EXPECT_EQ(result.trace.points, rebuilt);
  EXPECT_EQ(static_cast<std::int64_t>(values.size()), result.trace.evaluations_used);
  for (const auto& p : points) EXPECT_TRUE(inst.bounds().contains(p));
}

TEST(Optimize, LevelBoundsAndScoringCost) {
  for (const std::size_t dim : {1u, 2u, 3u}) {
    const int depth = 3;
    std::map<int, std::int64_t> decomposed_per_level;
    int max_level = 0;
    DriverEvents ev;
    ev.on_decompose = [&](const Hypersphere& h, std::int64_t) { ++decomposed_per_level[h.level]; };
    ev.on_exploit = [&](const Hypersphere& h, std::int64_t) { max_level = std::max(max_level, h.level); };
    const auto result = optimize(sphere, config_for(dim, depth, 100000), 0.0, ev);
    EXPECT_EQ(max_level, depth);
    for (const auto& [level, count] : decomposed_per_level) {
      EXPECT_LT(level, depth);
      // Scoring at level l+1 costs 3 * 2D per decomposed level-l sphere.
      const auto cost = 3 * static_cast<std::int64_t>(2 * dim) * count;
      EXPECT_LE(cost, 3 * static_cast<std::int64_t>(std::pow(2 * dim, level + 1)));
    }
    EXPECT_EQ(result.reason, StopReason::DepthExhausted);
  }
}

TEST(Optimize, RejectsInvalidConfig) {
  FdaConfig cfg = config_for(2, 0, 10);
  EXPECT_THROW(optimize(sphere, cfg), std::invalid_argument);
  cfg = config_for(2, 1, 0);
  EXPECT_THROW(optimize(sphere, cfg), std::invalid_argument);
  auto inst = bench::make_instance(1, 3, 1);
  EXPECT_THROW(optimize(inst, config_for(2, 1, 10)), std::invalid_argument);
}

}  // namespace
}  // namespace fda
