#include "nonholonomy/sampling.hpp"

#include <array>

namespace nonholonomy {

Scalar RationalSampler::next() {
  const auto num = static_cast<long>(engine_() % 19) - 9;
  const auto den = static_cast<unsigned long>(engine_() % 3) + 1;
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

Scalar RationalSampler::next_nonzero() {
  while (true) {
    Scalar q = next();
    if (q != 0) return q;
  }
}

Point RationalSampler::point(std::size_t n) {
  Point p;
  p.reserve(n);
  for (std::size_t i = 0; i < n; ++i) p.push_back(next());
  return p;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  // splitmix64 finalizer over the pair.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<Point> default_samples(std::size_t n, const SampleOptions& options) {
  static const std::array<Scalar, 5> kGrid = {Scalar(0), Scalar(1), Scalar(-1), Scalar(1, 2), Scalar(-1, 2)};
  constexpr std::uint64_t kBase = kGrid.size();

  // 5^n, saturating once it exceeds the cap.
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n && total <= options.grid_cap; ++i) total *= kBase;
  const bool full = total <= options.grid_cap;
  const std::uint64_t count = full ? total : options.grid_cap;

  // For oversized grids, the first `width` coordinates run through base-5
  // digits of the sample number and later coordinates repeat them with a
  // multiplier, so the origin and the coordinate axes are still visited.
  std::size_t width = 1;
  for (std::uint64_t span = kBase; span < count; span *= kBase) ++width;

  std::vector<Point> out;
  out.reserve(count + options.random_count);
  for (std::uint64_t s = 0; s < count; ++s) {
    Point p(n);
    if (full) {
      std::uint64_t rest = s;
      for (std::size_t i = n; i-- > 0;) {
        p[i] = kGrid[rest % kBase];
        rest /= kBase;
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t digit = s;
        for (std::size_t d = 0; d < i % width; ++d) digit /= kBase;
        p[i] = kGrid[((digit % kBase) * (1 + i / width)) % kBase];
      }
    }
    out.push_back(std::move(p));
  }
  RationalSampler sampler(derive_seed(options.seed, 0xC0FFEE));
  for (std::size_t r = 0; r < options.random_count; ++r) out.push_back(sampler.point(n));
  return out;
}

}  // namespace nonholonomy
