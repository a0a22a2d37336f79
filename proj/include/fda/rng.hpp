#ifndef FDA_RNG_HPP
#define FDA_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace fda {

/// SplitMix64: a 64-bit counter-based generator. Every draw is a pure
/// function of (seed, draw index), so streams are identical on every
/// platform. The standard library distributions are implementation-defined,
/// hence the hand-written conversions below.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). Multiply-shift; bias is below 2^-64 * n.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  /// Standard normal via Box-Muller (cosine branch only, one draw pair per call).
  double normal() {
    double u1 = uniform();
    const double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

/// Folds a tuple of small integers into one well-mixed seed.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  SplitMix64 g(a * 0x100000001B3ULL ^ (b << 24) ^ (c << 48) ^ 0xF0DA5EEDULL);
  g.next();
  return g.next() ^ c;
}

}  // namespace fda

#endif  // FDA_RNG_HPP
