#ifndef FDA_BOX_HPP
#define FDA_BOX_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fda {

using Vector = std::vector<double>;

/// Axis-aligned feasible region [lower, upper].
struct Box {
  Vector lower;
  Vector upper;

  static Box cube(std::size_t dim, double lo, double hi) {
    return Box{Vector(dim, lo), Vector(dim, hi)};
  }

  std::size_t dimension() const { return lower.size(); }

  /// Throws std::invalid_argument unless lower < upper componentwise.
  void validate() const {
    if (lower.empty() || lower.size() != upper.size())
      throw std::invalid_argument("box: lower/upper must be non-empty and of equal length");
    for (std::size_t d = 0; d < lower.size(); ++d)
      if (!(lower[d] < upper[d]))
        throw std::invalid_argument("box: degenerate extent in dimension " + std::to_string(d));
  }

  bool contains(std::span<const double> x) const {
    if (x.size() != lower.size()) return false;
    for (std::size_t d = 0; d < x.size(); ++d)
      if (x[d] < lower[d] || x[d] > upper[d]) return false;
    return true;
  }

  void clamp(Vector& x) const {
    for (std::size_t d = 0; d < x.size(); ++d) x[d] = std::clamp(x[d], lower[d], upper[d]);
  }

  Vector clamped(Vector x) const {
    clamp(x);
    return x;
  }

  bool operator==(const Box&) const = default;
};

}  // namespace fda

#endif  // FDA_BOX_HPP
