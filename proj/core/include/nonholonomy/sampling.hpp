#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "nonholonomy/scalar.hpp"

namespace nonholonomy {

/// Seeded source of small-height rationals: numerator uniform in [-9, 9],
/// denominator uniform in {1, 2, 3}. Only raw mt19937_64 output is used, so
/// streams are identical across standard libraries.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : engine_(seed) {}

  Scalar next();
  /// Same distribution conditioned on a nonzero result.
  Scalar next_nonzero();
  Point point(std::size_t n);
  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent stream seed for item `index` of a seeded run.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

struct SampleOptions {
  std::uint64_t seed = 1;
  std::size_t random_count = 100;
  std::size_t grid_cap = 125;
};

/// Deterministic grid over {0, 1, -1, 1/2, -1/2}^n (evenly strided down to
/// grid_cap points when larger) followed by random_count seeded points.
std::vector<Point> default_samples(std::size_t n, const SampleOptions& options = {});

}  // namespace nonholonomy
