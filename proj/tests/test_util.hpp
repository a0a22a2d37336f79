#ifndef FDA_TESTS_TEST_UTIL_HPP
#define FDA_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <random>
#include <vector>

namespace fda::testing {

inline std::vector<double> random_vector(std::mt19937_64& gen, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(gen);
  return v;
}

/// Uniform point in the ball of radius r around the origin.
inline std::vector<double> random_in_ball(std::mt19937_64& gen, std::size_t n, double r) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  double norm = 0.0;
  for (double& x : v) {
    x = g(gen);
    norm += x * x;
  }
  norm = std::sqrt(norm);
  const double scale = r * std::pow(u(gen), 1.0 / static_cast<double>(n)) / norm;
  for (double& x : v) x *= scale;
  return v;
}

inline double sq_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace fda::testing

#endif
