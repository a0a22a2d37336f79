#ifndef FDA_GEOMETRY_HPP
#define FDA_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "box.hpp"

namespace fda {

/// Tunables of the hypersphere decomposition.
struct GeometryParams {
  /// r' / r, the pre-inflation child radius relative to the parent.
  double child_radius_ratio = 0.5;
  /// Multiplier applied to every child radius right after decomposition.
  double inflation_coefficient = 1.75;
  /// Offset of the two quality probes, as a fraction of r.
  double alpha = 0.1;
  /// Distances to the best-so-far below this are treated as zero.
  double distance_epsilon = 1e-12;
};

/// A search region of the fractal decomposition.
struct Hypersphere {
  Vector center;
  double radius = 0.0;
  int level = 0;
  std::optional<double> quality;
  /// Objective value measured at the (clamped) center while scoring.
  std::optional<double> center_value;

  std::size_t dimension() const { return center.size(); }
};

/// Best point seen so far. The value is recorded at evaluation time and
/// never recomputed.
struct BestSoFar {
  Vector position;
  double value = std::numeric_limits<double>::infinity();

  bool empty() const { return position.empty(); }

  /// Returns true when (x, fx) strictly improves the record.
  bool offer(std::span<const double> x, double fx) {
    if (!empty() && !(fx < value)) return false;
    position.assign(x.begin(), x.end());
    value = fx;
    return true;
  }
};

/// Quality assigned to a region whose three probes all coincide with the
/// best-so-far position.
inline constexpr double kContainsBestQuality = std::numeric_limits<double>::infinity();

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    s += diff * diff;
  }
  return std::sqrt(s);
}

/// Splits `parent` into 2*D children, two per axis, ordered
/// (axis 0, minus), (axis 0, plus), (axis 1, minus), ...
/// Each child center sits (r - r') from the parent center along its axis,
/// with r' = ratio * r; children carry radius r' (not yet inflated).
inline std::vector<Hypersphere> decompose(const Hypersphere& parent, double child_radius_ratio) {
  if (!(parent.radius > 0.0)) throw std::invalid_argument("decompose: parent radius must be positive");
  if (parent.center.empty()) throw std::invalid_argument("decompose: parent has no dimensions");
  if (!(child_radius_ratio > 0.0 && child_radius_ratio < 1.0))
    throw std::invalid_argument("decompose: child radius ratio must lie in (0, 1)");

  const double child_radius = child_radius_ratio * parent.radius;
  const double offset = parent.radius - child_radius;
  const std::size_t dim = parent.dimension();

  std::vector<Hypersphere> children;
  children.reserve(2 * dim);
  for (std::size_t d = 0; d < dim; ++d) {
    for (const double sign : {-1.0, 1.0}) {
      Hypersphere child{parent.center, child_radius, parent.level + 1, std::nullopt, std::nullopt};
      child.center[d] += sign * offset;
      children.push_back(std::move(child));
    }
  }
  return children;
}

inline double inflate(double radius, double inflation_coefficient) {
  if (!(radius > 0.0)) throw std::invalid_argument("inflate: radius must be positive");
  if (!(inflation_coefficient >= 1.0))
    throw std::invalid_argument("inflate: coefficient below 1 leaves the parent uncovered");
  return radius * inflation_coefficient;
}

/// The two quality probes C +/- alpha * r / sqrt(D) along the all-ones
/// direction. Both lie at distance alpha * r from the center.
inline std::pair<Vector, Vector> probe_points(const Hypersphere& h, double alpha) {
  if (h.center.empty()) throw std::invalid_argument("probe_points: empty center");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("probe_points: alpha must lie in (0, 1]");
  const double step = alpha * h.radius / std::sqrt(static_cast<double>(h.dimension()));
  Vector s1 = h.center;
  Vector s2 = h.center;
  for (std::size_t d = 0; d < h.dimension(); ++d) {
    s1[d] += step;
    s2[d] -= step;
  }
  return {std::move(s1), std::move(s2)};
}

/// q = max over {s1, s2, center} of f(x) / ||x - bsf||. Ratios whose distance
/// falls below `distance_epsilon` are left out; if none remain the region
/// holds the best-so-far and gets kContainsBestQuality. The result is also
/// stored in `h.quality`.
inline double score_quality(Hypersphere& h, double f1, double f2, double fc,
                            std::span<const double> s1, std::span<const double> s2,
                            std::span<const double> center, const BestSoFar& bsf,
                            double distance_epsilon = GeometryParams{}.distance_epsilon) {
  if (bsf.empty()) throw std::invalid_argument("score_quality: best-so-far is unset");
  const std::pair<double, std::span<const double>> probes[] = {{f1, s1}, {f2, s2}, {fc, center}};

  std::optional<double> q;
  for (const auto& [fx, x] : probes) {
    const double dist = euclidean_distance(x, bsf.position);
    if (dist < distance_epsilon) continue;
    const double ratio = fx / dist;
    if (!q || ratio > *q) q = ratio;
  }
  h.quality = q.value_or(kContainsBestQuality);
  return *h.quality;
}

/// Convenience overload for unclamped probes measured at `h.center`.
inline double score_quality(Hypersphere& h, double f1, double f2, double fc,
                            std::span<const double> s1, std::span<const double> s2,
                            const BestSoFar& bsf,
                            double distance_epsilon = GeometryParams{}.distance_epsilon) {
  const Vector center = h.center;
  return score_quality(h, f1, f2, fc, s1, s2, center, bsf, distance_epsilon);
}

}  // namespace fda

#endif  // FDA_GEOMETRY_HPP
