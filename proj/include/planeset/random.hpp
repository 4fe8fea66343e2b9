#ifndef PLANESET_RANDOM_HPP
#define PLANESET_RANDOM_HPP

#include <algorithm>
#include <cstdint>
#include <random>

namespace planeset {

/// Seeded generator whose double stream is identical across standard
/// libraries (the distribution classes are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform in {0, ..., n-1}; n > 0.
  std::size_t index(std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace planeset

#endif  // PLANESET_RANDOM_HPP
