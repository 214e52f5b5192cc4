#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "schurlab/matrix.hpp"

namespace schurlab {

// Deterministic splitmix64 stream.  Standard library distributions are
// implementation-defined, so seeded verdicts use this generator end to end.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Decorrelated stream for one (seed, index) pair.
  static Prng for_trial(std::uint64_t seed, std::uint64_t index) {
    return Prng(mix(seed ^ mix(index * 0xD1342543DE82EF95ULL + 0x2545F4914F6CDD1DULL)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in (0, 1].
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Standard normal via Box-Muller; both outputs are used.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

inline Matrix random_gaussian_matrix(Prng& rng, std::size_t rows, std::size_t cols) {
  Matrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = rng.next_normal();
  return a;
}

// Haar-distributed orthogonal matrix: modified Gram-Schmidt on a Gaussian
// draw with positive-diagonal sign convention; redraws near-singular inputs.
inline Matrix random_orthogonal(Prng& rng, std::size_t n) {
  for (;;) {
    Matrix g = random_gaussian_matrix(rng, n, n);
    bool degenerate = false;
    for (std::size_t j = 0; j < n && !degenerate; ++j) {
      for (std::size_t k = 0; k < j; ++k) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += g(i, k) * g(i, j);
        for (std::size_t i = 0; i < n; ++i) g(i, j) -= dot * g(i, k);
      }
      double norm_sq = 0.0;
      for (std::size_t i = 0; i < n; ++i) norm_sq += g(i, j) * g(i, j);
      const double norm = std::sqrt(norm_sq);
      if (norm < 1e-8) {
        degenerate = true;
        break;
      }
      for (std::size_t i = 0; i < n; ++i) g(i, j) /= norm;
    }
    if (!degenerate) return g;
  }
}

}  // namespace schurlab
