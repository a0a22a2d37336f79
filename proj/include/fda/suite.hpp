#ifndef FDA_SUITE_HPP
#define FDA_SUITE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "box.hpp"
#include "rng.hpp"

namespace fda::bench {

enum class FunctionGroup { Separable, MiscModerate, IllConditioned, MultiModal, WeakStructure };

inline std::string_view group_name(FunctionGroup g) {
  switch (g) {
    case FunctionGroup::Separable: return "separable";
    case FunctionGroup::MiscModerate: return "moderate";
    case FunctionGroup::IllConditioned: return "ill-conditioned";
    case FunctionGroup::MultiModal: return "multi-modal";
    case FunctionGroup::WeakStructure: return "weak-structure";
  }
  return "unknown";
}

inline FunctionGroup group_of(int function_id) {
  if (function_id < 1 || function_id > 24) throw std::out_of_range("unknown function id " + std::to_string(function_id));
  if (function_id <= 5) return FunctionGroup::Separable;
  if (function_id <= 9) return FunctionGroup::MiscModerate;
  if (function_id <= 14) return FunctionGroup::IllConditioned;
  if (function_id <= 19) return FunctionGroup::MultiModal;
  return FunctionGroup::WeakStructure;
}

struct FunctionDescriptor {
  int id = 0;
  std::string name;
  FunctionGroup group = FunctionGroup::Separable;
  bool implemented = false;
  bool rotated = false;
  int min_dimension = 1;
};

inline const std::vector<FunctionDescriptor>& base_function_registry() {
  static const std::vector<FunctionDescriptor> registry = [] {
    struct Row {
      const char* name;
      bool implemented;
      bool rotated;
      int min_dim;
    };
    constexpr std::array<Row, 24> rows{{
        {"sphere", true, false, 1},
        {"separable ellipsoid", true, false, 1},
        {"separable rastrigin", true, false, 1},
        {"skew rastrigin-bueche", false, false, 1},
        {"linear slope", false, false, 1},
        {"attractive sector", true, true, 1},
        {"step ellipsoid", true, true, 1},
        {"rosenbrock", true, false, 2},
        {"rotated rosenbrock", true, true, 2},
        {"ellipsoid", true, true, 1},
        {"discus", true, true, 1},
        {"bent cigar", true, true, 1},
        {"sharp ridge", true, true, 2},
        {"different powers", true, true, 1},
        {"rastrigin", true, true, 1},
        {"weierstrass", false, true, 1},
        {"schaffers f7", true, true, 2},
        {"schaffers f7 ill-conditioned", true, true, 2},
        {"griewank-rosenbrock", true, true, 2},
        {"schwefel", true, false, 1},
        {"gallagher 101 peaks", true, true, 1},
        {"gallagher 21 peaks", true, true, 1},
        {"katsuura", false, true, 1},
        {"lunacek bi-rastrigin", false, true, 1},
    }};
    std::vector<FunctionDescriptor> out;
    for (int id = 1; id <= 24; ++id) {
      const Row& r = rows[static_cast<std::size_t>(id - 1)];
      out.push_back({id, r.name, group_of(id), r.implemented, r.rotated, r.min_dim});
    }
    return out;
  }();
  return registry;
}

inline const FunctionDescriptor& describe(int function_id) {
  group_of(function_id);
  return base_function_registry()[static_cast<std::size_t>(function_id - 1)];
}

inline std::vector<int> implemented_function_ids() {
  std::vector<int> ids;
  for (const auto& d : base_function_registry())
    if (d.implemented) ids.push_back(d.id);
  return ids;
}

/// Thrown by make_instance for a registered but unimplemented function.
class NotImplemented : public std::runtime_error {
 public:
  explicit NotImplemented(int id)
      : std::runtime_error("function f" + std::to_string(id) + " is not implemented") {}
};

/// "f<id>_d<dim>_i<instance>", the identity of a problem in every file.
inline std::string problem_key(int function_id, std::size_t dimension, int instance_id) {
  return "f" + std::to_string(function_id) + "_d" + std::to_string(dimension) + "_i" +
         std::to_string(instance_id);
}

namespace detail {

/// Exponent ratio i/(D-1) used by the conditioned functions; 0 in 1-D.
inline double ramp(std::size_t i, std::size_t dim) {
  return dim > 1 ? static_cast<double>(i) / static_cast<double>(dim - 1) : 0.0;
}

/// Multiplies z in place by diag(sqrt(cond)^(i/(D-1))).
inline void condition(std::vector<double>& z, double cond) {
  for (std::size_t i = 0; i < z.size(); ++i) z[i] *= std::pow(std::sqrt(cond), ramp(i, z.size()));
}

inline double rosenbrock(std::span<const double> u) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double a = u[i] * u[i] - u[i + 1];
    const double b = u[i] - 1.0;
    s += 100.0 * a * a + b * b;
  }
  return s;
}

/// Argmax of y*sin(sqrt(y)) near 420.97, refined by Newton on the derivative.
inline double schwefel_peak() {
  static const double peak = [] {
    double y = 420.9687463;
    for (int it = 0; it < 20; ++it) {
      const double r = std::sqrt(y);
      const double g = std::sin(r) + 0.5 * r * std::cos(r);
      const double dg = 0.75 * std::cos(r) / r - 0.25 * std::sin(r);
      y -= g / dg;
    }
    return y;
  }();
  return peak;
}

struct Peak {
  std::vector<double> location;  // in z-space
  std::vector<double> scale;     // diagonal of the peak's quadratic form
  double weight = 0.0;
};

}  // namespace detail

/// A benchmark function bound to dimension and instance. Evaluation is
/// f_raw(R (x - x_opt)) + f_opt with f_raw minimal (= 0) at the origin.
class ProblemInstance {
 public:
  int function_id() const { return function_id_; }
  std::size_t dimension() const { return x_opt_.size(); }
  int instance_id() const { return instance_id_; }
  const std::vector<double>& x_opt() const { return x_opt_; }
  double f_opt() const { return f_opt_; }
  /// Row-major D x D orthogonal matrix.
  const std::vector<double>& rotation() const { return rotation_; }
  const Box& bounds() const { return bounds_; }
  std::int64_t evaluations_used() const { return evaluations_used_; }
  std::string key() const { return problem_key(function_id_, dimension(), instance_id_); }

  /// Counts one evaluation.
  double evaluate(std::span<const double> x) {
    if (x.size() != dimension())
      throw std::invalid_argument("evaluate: expected " + std::to_string(dimension()) +
                                  " coordinates, got " + std::to_string(x.size()));
    ++evaluations_used_;
    return raw(transform(x)) + f_opt_;
  }

  double operator()(std::span<const double> x) { return evaluate(x); }

  /// The base function at z (no transform, no offset, not counted).
  double raw(std::span<const double> z) const;

  /// z = R (x - x_opt).
  std::vector<double> transform(std::span<const double> x) const {
    const std::size_t n = dimension();
    std::vector<double> shifted(n);
    for (std::size_t i = 0; i < n; ++i) shifted[i] = x[i] - x_opt_[i];
    if (!rotated_) return shifted;
    std::vector<double> z(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < n; ++c) s += rotation_[r * n + c] * shifted[c];
      z[r] = s;
    }
    return z;
  }

  friend ProblemInstance make_instance(int function_id, std::size_t dimension, int instance_id);

 private:
  int function_id_ = 0;
  int instance_id_ = 0;
  bool rotated_ = false;
  std::vector<double> x_opt_;
  double f_opt_ = 0.0;
  std::vector<double> rotation_;
  Box bounds_;
  std::shared_ptr<const std::vector<detail::Peak>> peaks_;
  std::int64_t evaluations_used_ = 0;
};

/// Orthonormalizes a seeded Gaussian matrix (modified Gram-Schmidt over rows).
inline std::vector<double> random_rotation(std::size_t n, SplitMix64& rng) {
  std::vector<double> m(n * n);
  for (double& v : m) v = rng.normal();
  for (std::size_t r = 0; r < n; ++r) {
    double* row = &m[r * n];
    for (std::size_t p = 0; p < r; ++p) {
      const double* prev = &m[p * n];
      double dot = 0.0;
      for (std::size_t c = 0; c < n; ++c) dot += row[c] * prev[c];
      for (std::size_t c = 0; c < n; ++c) row[c] -= dot * prev[c];
    }
    double norm = 0.0;
    for (std::size_t c = 0; c < n; ++c) norm += row[c] * row[c];
    norm = std::sqrt(norm);
    for (std::size_t c = 0; c < n; ++c) row[c] /= norm;
  }
  return m;
}

/// Deterministic instance for (function, dimension, instance): the same
/// triple always produces the same x_opt, f_opt and rotation.
inline ProblemInstance make_instance(int function_id, std::size_t dimension, int instance_id) {
  const FunctionDescriptor& desc = describe(function_id);
  if (!desc.implemented) throw NotImplemented(function_id);
  if (dimension < static_cast<std::size_t>(desc.min_dimension))
    throw std::invalid_argument("f" + std::to_string(function_id) + " needs dimension >= " +
                                std::to_string(desc.min_dimension));
  if (instance_id < 1) throw std::invalid_argument("instance id must be positive");

  SplitMix64 rng(mix_seed(static_cast<std::uint64_t>(function_id), dimension,
                          static_cast<std::uint64_t>(instance_id)));
  ProblemInstance inst;
  inst.function_id_ = function_id;
  inst.instance_id_ = instance_id;
  inst.rotated_ = desc.rotated;
  inst.bounds_ = Box::cube(dimension, -5.0, 5.0);

  inst.x_opt_.resize(dimension);
  for (double& v : inst.x_opt_) v = rng.uniform(-4.0, 4.0);
  inst.f_opt_ = std::round(rng.uniform(-100.0, 100.0) * 100.0) / 100.0;

  if (desc.rotated) {
    inst.rotation_ = random_rotation(dimension, rng);
  } else {
    inst.rotation_.assign(dimension * dimension, 0.0);
    for (std::size_t i = 0; i < dimension; ++i) inst.rotation_[i * dimension + i] = 1.0;
  }

  if (function_id == 21 || function_id == 22) {
    const std::size_t n_peaks = function_id == 21 ? 101 : 21;
    const double top_cond = function_id == 21 ? 1000.0 : 1e6;
    auto peaks = std::make_shared<std::vector<detail::Peak>>();
    for (std::size_t p = 0; p < n_peaks; ++p) {
      detail::Peak peak;
      double cond = top_cond;
      if (p == 0) {
        peak.location.assign(dimension, 0.0);
        peak.weight = 10.0;
      } else {
        // Located uniformly in x-space, then mapped into z-space.
        std::vector<double> x(dimension);
        for (double& v : x) v = rng.uniform(-4.9, 4.9);
        peak.location = inst.transform(x);
        peak.weight = 1.1 + 8.0 * static_cast<double>(p - 1) / static_cast<double>(n_peaks - 2);
        const double steps = static_cast<double>(n_peaks - 2);
        cond = std::pow(1000.0, 2.0 * static_cast<double>(rng.below(n_peaks - 1)) / steps);
      }
      // Diagonal cond^(j/(D-1)) / cond^(1/4), axes in seeded order.
      std::vector<std::size_t> perm(dimension);
      for (std::size_t i = 0; i < dimension; ++i) perm[i] = i;
      for (std::size_t i = dimension; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
      peak.scale.resize(dimension);
      for (std::size_t i = 0; i < dimension; ++i)
        peak.scale[perm[i]] = std::pow(cond, detail::ramp(i, dimension)) / std::pow(cond, 0.25);
      peaks->push_back(std::move(peak));
    }
    inst.peaks_ = std::move(peaks);
  }
  return inst;
}

inline double ProblemInstance::raw(std::span<const double> zin) const {
  using detail::ramp;
  const std::size_t n = zin.size();
  std::vector<double> z(zin.begin(), zin.end());
  constexpr double two_pi = 2.0 * std::numbers::pi;

  switch (function_id_) {
    case 1: {
      double s = 0.0;
      for (double v : z) s += v * v;
      return s;
    }
    case 2:
    case 10: {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += std::pow(10.0, 6.0 * ramp(i, n)) * z[i] * z[i];
      return s;
    }
    case 3:
    case 15: {
      double cos_sum = 0.0;
      double sq = 0.0;
      for (double v : z) {
        cos_sum += std::cos(two_pi * v);
        sq += v * v;
      }
      return 10.0 * (static_cast<double>(n) - cos_sum) + sq;
    }
    case 6: {
      detail::condition(z, 10.0);
      double s = 0.0;
      for (double v : z) {
        const double w = v > 0.0 ? 100.0 * v : v;
        s += w * w;
      }
      return std::pow(s, 0.9);
    }
    case 7: {
      detail::condition(z, 10.0);
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double r = std::abs(z[i]) > 0.5 ? std::round(z[i]) : std::round(10.0 * z[i]) / 10.0;
        s += std::pow(10.0, 2.0 * ramp(i, n)) * r * r;
      }
      return 0.1 * std::max(std::abs(z[0]) / 1e4, s);
    }
    case 8:
    case 9: {
      const double c = std::max(1.0, std::sqrt(static_cast<double>(n)) / 8.0);
      for (double& v : z) v = c * v + 1.0;
      return detail::rosenbrock(z);
    }
    case 11: {
      double s = 1e6 * z[0] * z[0];
      for (std::size_t i = 1; i < n; ++i) s += z[i] * z[i];
      return s;
    }
    case 12: {
      double s = 0.0;
      for (std::size_t i = 1; i < n; ++i) s += z[i] * z[i];
      return z[0] * z[0] + 1e6 * s;
    }
    case 13: {
      detail::condition(z, 10.0);
      double s = 0.0;
      for (std::size_t i = 1; i < n; ++i) s += z[i] * z[i];
      return z[0] * z[0] + 100.0 * std::sqrt(s);
    }
    case 14: {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += std::pow(std::abs(z[i]), 2.0 + 4.0 * ramp(i, n));
      return std::sqrt(s);
    }
    case 17:
    case 18: {
      detail::condition(z, function_id_ == 17 ? 10.0 : 1000.0);
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const double si = std::sqrt(z[i] * z[i] + z[i + 1] * z[i + 1]);
        const double sine = std::sin(50.0 * std::pow(si, 0.2));
        s += std::sqrt(si) * (1.0 + sine * sine);
      }
      const double mean = s / static_cast<double>(n - 1);
      return mean * mean;
    }
    case 19: {
      const double c = std::max(1.0, std::sqrt(static_cast<double>(n)) / 8.0);
      for (double& v : z) v = c * v + 1.0;
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = z[i] * z[i] - z[i + 1];
        const double b = z[i] - 1.0;
        const double si = 100.0 * a * a + b * b;
        s += si / 4000.0 - std::cos(si);
      }
      return std::max(0.0, 10.0 * (s / static_cast<double>(n - 1)) + 10.0);
    }
    case 20: {
      const double peak = detail::schwefel_peak();
      const double peak_value = peak * std::sin(std::sqrt(peak));
      double s = 0.0;
      double penalty = 0.0;
      for (double v : z) {
        const double y = peak + 100.0 * v;
        s += peak_value - y * std::sin(std::sqrt(std::abs(y)));
        const double over = std::abs(y) - 500.0;
        if (over > 0.0) penalty += over * over;
      }
      return (s + penalty) / static_cast<double>(n);
    }
    case 21:
    case 22: {
      double best = 0.0;
      for (const detail::Peak& p : *peaks_) {
        double q = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double d = z[i] - p.location[i];
          q += p.scale[i] * d * d;
        }
        best = std::max(best, p.weight * std::exp(-q / (2.0 * static_cast<double>(n))));
      }
      const double gap = 10.0 - best;
      return gap * gap;
    }
    default:
      throw NotImplemented(function_id_);
  }
}

}  // namespace fda::bench

#endif  // FDA_SUITE_HPP
