#include "nonholonomy/multi_index.hpp"

#include "nonholonomy/errors.hpp"

namespace nonholonomy {

MultiIndex MultiIndex::of(std::span<const std::size_t> increasing) {
  std::uint64_t bits = 0;
  for (std::size_t k = 0; k < increasing.size(); ++k) {
    if (increasing[k] >= kMaxDim) throw InputError("coordinate index exceeds 64");
    if (k > 0 && increasing[k] <= increasing[k - 1]) throw InputError("multi-index must be strictly increasing");
    bits |= std::uint64_t{1} << increasing[k];
  }
  return MultiIndex(bits);
}

MultiIndex MultiIndex::of(std::initializer_list<std::size_t> increasing) {
  return of(std::span<const std::size_t>(increasing.begin(), increasing.size()));
}

MultiIndex MultiIndex::single(std::size_t i) {
  if (i >= kMaxDim) throw InputError("coordinate index exceeds 64");
  return MultiIndex(std::uint64_t{1} << i);
}

std::pair<int, MultiIndex> MultiIndex::normalize(std::span<const std::size_t> indices) {
  std::uint64_t bits = 0;
  int sign = 1;
  for (std::size_t i : indices) {
    if (i >= kMaxDim) throw InputError("coordinate index exceeds 64");
    const std::uint64_t bit = std::uint64_t{1} << i;
    if (bits & bit) return {0, MultiIndex()};
    // Each earlier index larger than i is one transposition.
    if (std::popcount(bits & ~((bit << 1) - 1)) % 2) sign = -sign;
    bits |= bit;
  }
  return {sign, MultiIndex(bits)};
}

std::vector<std::size_t> MultiIndex::indices() const {
  std::vector<std::size_t> out;
  out.reserve(degree());
  for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  return out;
}

MultiIndex MultiIndex::all_but(std::size_t n, std::size_t i) {
  const std::uint64_t all = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return MultiIndex(all & ~(std::uint64_t{1} << i));
}

std::strong_ordering operator<=>(MultiIndex a, MultiIndex b) noexcept {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  const std::uint64_t diff = a.bits_ ^ b.bits_;
  if (diff == 0) return std::strong_ordering::equal;
  // The tuple holding the smallest differing index is lexicographically first.
  const std::uint64_t low = diff & (~diff + 1);
  return (a.bits_ & low) ? std::strong_ordering::less : std::strong_ordering::greater;
}

int wedge_sign(MultiIndex a, MultiIndex b) noexcept {
  if (a.bits() & b.bits()) return 0;
  // Count pairs (i in a, j in b) with i > j: each is one transposition.
  std::size_t inversions = 0;
  for (std::uint64_t bb = b.bits(); bb; bb &= bb - 1) {
    const std::uint64_t bit = bb & (~bb + 1);
    inversions += static_cast<std::size_t>(std::popcount(a.bits() & ~((bit << 1) - 1)));
  }
  return inversions % 2 ? -1 : 1;
}

int insertion_sign(std::size_t i, MultiIndex rest) noexcept {
  const std::uint64_t below = (std::uint64_t{1} << i) - 1;
  return std::popcount(rest.bits() & below) % 2 ? -1 : 1;
}

std::vector<MultiIndex> all_multi_indices(std::size_t n, std::size_t degree) {
  std::vector<MultiIndex> out;
  if (degree > n) return out;
  std::vector<std::size_t> idx(degree);
  for (std::size_t i = 0; i < degree; ++i) idx[i] = i;
  while (true) {
    out.push_back(MultiIndex::of(idx));
    std::size_t k = degree;
    while (k > 0 && idx[k - 1] == n - degree + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < degree; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace nonholonomy
