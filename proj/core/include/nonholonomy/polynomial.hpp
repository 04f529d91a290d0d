#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nonholonomy/chart.hpp"
#include "nonholonomy/scalar.hpp"

namespace nonholonomy {

/// Exponent vector of a monomial; length equals the chart dimension.
using Exponent = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms with zero coefficient are never stored, so two polynomials over the
/// same chart are equal iff their term maps are equal.
class Polynomial {
 public:
  using Terms = std::map<Exponent, Scalar>;

  /// The zero polynomial.
  explicit Polynomial(Chart chart);
  Polynomial(Chart chart, const Scalar& constant);

  static Polynomial variable(Chart chart, std::size_t i);
  static Polynomial monomial(Chart chart, Exponent exponent, const Scalar& coefficient);

  const Chart& chart() const noexcept { return chart_; }
  const Terms& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Coefficient of the constant monomial.
  Scalar constant_term() const;
  Scalar coefficient(const Exponent& e) const;
  std::size_t total_degree() const noexcept;
  /// Total degree counting only the variables flagged in `mask`.
  std::size_t degree_in(std::span<const bool> mask) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Scalar& s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.chart_ == b.chart_ && a.terms_ == b.terms_;
  }

  /// Exact value at a point. Throws InputError on dimension mismatch.
  Scalar eval(std::span<const Scalar> pt) const;

  /// Partial derivative along coordinate i (0-based). Throws InputError when out of range.
  Polynomial diff(std::size_t i) const;

  /// Substitutes constants for the variables flagged in `mask`, leaving the rest symbolic.
  Polynomial partial_eval(std::span<const bool> mask, std::span<const Scalar> values) const;

  /// Expression form accepted by the document parser, e.g. "3/2*x*x*y - z + 1".
  std::string to_string() const;

 private:
  void add_term(const Exponent& e, const Scalar& c);
  void require_same_chart(const Polynomial& o) const;

  Chart chart_;
  Terms terms_;
};

inline Scalar poly_eval(const Polynomial& p, std::span<const Scalar> pt) { return p.eval(pt); }
inline Polynomial poly_diff(const Polynomial& p, std::size_t i) { return p.diff(i); }

}  // namespace nonholonomy
