#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nonholonomy/polynomial.hpp"
#include "nonholonomy/scalar.hpp"

namespace nonholonomy {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix from_rows(const std::vector<std::vector<Scalar>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Scalar> row(std::size_t r) const;
  RationalMatrix transposed() const;
  bool is_zero() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Exact rank. Rows are scaled to integers and reduced with Bareiss'
/// fraction-free elimination, so no rational arithmetic happens in the loop.
std::size_t rank(const RationalMatrix& m);

/// Basis of the right null space {v : m v = 0}, one vector per free column of
/// the reduced row echelon form (free entry 1, other free entries 0).
std::vector<std::vector<Scalar>> kernel(const RationalMatrix& m);

/// Square-matrix determinant with polynomial entries, by cofactor expansion
/// that skips zero entries. Intended for the small minors used in certificates.
Polynomial determinant(const std::vector<std::vector<Polynomial>>& m);

/// Searches the maximal minors of a polynomial matrix (row subsets when it is
/// tall, column subsets otherwise) for one that is a nonzero constant. Returns
/// the chosen row or column indices; at most `max_tries` subsets are examined.
std::optional<std::vector<std::size_t>> constant_maximal_minor(const std::vector<std::vector<Polynomial>>& m,
                                                               std::size_t max_tries = 20000);

}  // namespace nonholonomy
