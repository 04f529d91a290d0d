#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nonholonomy {

/// Strictly increasing tuple of 0-based coordinate indices, stored as a bit set.
///
/// Ordering is degree first, then lexicographic on the index tuple.
class MultiIndex {
 public:
  static constexpr std::size_t kMaxDim = 64;

  constexpr MultiIndex() = default;
  static constexpr MultiIndex from_bits(std::uint64_t bits) { return MultiIndex(bits); }
  /// Sorted, distinct indices. Throws InputError otherwise.
  static MultiIndex of(std::span<const std::size_t> increasing);
  static MultiIndex of(std::initializer_list<std::size_t> increasing);
  static MultiIndex single(std::size_t i);

  /// Normalizes an arbitrary index tuple: returns the permutation sign and the
  /// sorted index, or sign 0 when an index repeats.
  static std::pair<int, MultiIndex> normalize(std::span<const std::size_t> indices);

  constexpr std::uint64_t bits() const noexcept { return bits_; }
  constexpr std::size_t degree() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t i) const noexcept { return (bits_ >> i) & 1U; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  /// Highest index + 1, 0 for the empty index.
  constexpr std::size_t span_dim() const noexcept { return 64 - static_cast<std::size_t>(std::countl_zero(bits_)); }
  std::vector<std::size_t> indices() const;

  constexpr MultiIndex without(std::size_t i) const noexcept { return MultiIndex(bits_ & ~(std::uint64_t{1} << i)); }
  constexpr MultiIndex with(std::size_t i) const noexcept { return MultiIndex(bits_ | (std::uint64_t{1} << i)); }

  /// The index {0..n-1} minus i.
  static MultiIndex all_but(std::size_t n, std::size_t i);

  friend constexpr bool operator==(MultiIndex a, MultiIndex b) noexcept { return a.bits_ == b.bits_; }
  friend std::strong_ordering operator<=>(MultiIndex a, MultiIndex b) noexcept;

 private:
  constexpr explicit MultiIndex(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

/// Sign of dx_a ^ dx_b relative to dx_{a∪b}; 0 when a and b share an index.
int wedge_sign(MultiIndex a, MultiIndex b) noexcept;

/// Sign of moving index i to the front of `rest`, i.e. dx_i ^ dx_rest = sign * dx_{rest∪{i}}.
int insertion_sign(std::size_t i, MultiIndex rest) noexcept;

/// All MultiIndices of the given degree over n coordinates, in ascending order.
std::vector<MultiIndex> all_multi_indices(std::size_t n, std::size_t degree);

}  // namespace nonholonomy
