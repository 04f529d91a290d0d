#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nonholonomy/chart.hpp"
#include "nonholonomy/multi_index.hpp"
#include "nonholonomy/polynomial.hpp"
#include "nonholonomy/scalar.hpp"

namespace nonholonomy {

/// Sparse differential p-form  sum_I f_I dx_I  with polynomial coefficients.
///
/// Keys are sorted MultiIndices of length `degree`; zero coefficients are
/// dropped on insertion, so structural equality is mathematical equality.
class DiffForm {
 public:
  using Terms = std::map<MultiIndex, Polynomial>;

  /// The zero form of the given degree.
  DiffForm(Chart chart, std::size_t degree);

  /// Degree-0 form.
  static DiffForm scalar(const Polynomial& f);
  /// dx_i (0-based).
  static DiffForm differential(const Chart& chart, std::size_t i);
  /// coefficient * dx_{i1} ^ ... ^ dx_{ip} for an arbitrary index tuple.
  static DiffForm basis(const Chart& chart, std::span<const std::size_t> indices, const Scalar& coefficient = 1);
  static DiffForm basis(const Chart& chart, std::initializer_list<std::size_t> indices,
                        const Scalar& coefficient = 1);

  const Chart& chart() const noexcept { return chart_; }
  std::size_t degree() const noexcept { return degree_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Polynomial coefficient(MultiIndex index) const;

  /// Adds f * dx_index. Throws InputError on a degree mismatch.
  void add_term(MultiIndex index, const Polynomial& f);

  DiffForm& operator+=(const DiffForm& o);
  DiffForm& operator-=(const DiffForm& o);
  DiffForm& operator*=(const Polynomial& f);
  DiffForm& operator*=(const Scalar& s);
  friend DiffForm operator+(DiffForm a, const DiffForm& b) { return a += b; }
  friend DiffForm operator-(DiffForm a, const DiffForm& b) { return a -= b; }
  friend DiffForm operator*(const Polynomial& f, DiffForm a) { return a *= f; }
  friend DiffForm operator*(const Scalar& s, DiffForm a) { return a *= s; }
  DiffForm operator-() const;

  friend bool operator==(const DiffForm& a, const DiffForm& b) {
    return a.chart_ == b.chart_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  /// Expression accepted by the document parser, e.g. "x*d(y)^d(z) - d(x)".
  std::string to_string() const;

 private:
  void require_compatible(const DiffForm& o) const;

  Chart chart_;
  std::size_t degree_;
  Terms terms_;
};

/// Vector field  sum_i X_i d/dx_i  with polynomial components.
class VectorField {
 public:
  /// The zero field.
  explicit VectorField(const Chart& chart);
  VectorField(const Chart& chart, std::vector<Polynomial> components);

  /// d/dx_i (0-based).
  static VectorField coordinate(const Chart& chart, std::size_t i);

  const Chart& chart() const noexcept { return chart_; }
  const std::vector<Polynomial>& components() const noexcept { return components_; }
  const Polynomial& component(std::size_t i) const { return components_.at(i); }
  bool is_zero() const noexcept;

  /// X(f) = sum_i X_i df/dx_i.
  Polynomial apply(const Polynomial& f) const;
  std::vector<Scalar> evaluate(std::span<const Scalar> pt) const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(const Polynomial& f);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const Polynomial& f, VectorField a) { return a *= f; }
  VectorField operator-() const;

  friend bool operator==(const VectorField& a, const VectorField& b) {
    return a.chart_ == b.chart_ && a.components_ == b.components_;
  }

  /// Expression accepted by the document parser, e.g. "@x + y*@z".
  std::string to_string() const;

 private:
  Chart chart_;
  std::vector<Polynomial> components_;
};

/// A form with its coefficients evaluated at a point.
struct ConstantForm {
  std::size_t degree = 0;
  std::map<MultiIndex, Scalar> terms;

  friend bool operator==(const ConstantForm&, const ConstantForm&) = default;
};

DiffForm wedge(const DiffForm& a, const DiffForm& b);
/// w ^ ... ^ w (k factors) of a 2-form. Throws InputError unless degree 2 and k >= 1.
DiffForm wedge_power(const DiffForm& w, std::size_t k);
/// a_1 ^ ... ^ a_m; the empty product is the constant 1.
DiffForm wedge_all(const Chart& chart, std::span<const DiffForm> forms);
DiffForm exterior_derivative(const DiffForm& a);
/// Contraction i_X a. Throws InputError for degree 0.
DiffForm interior_product(const VectorField& x, const DiffForm& a);
/// [X, Y]_j = X(Y_j) - Y(X_j).
VectorField lie_bracket(const VectorField& x, const VectorField& y);

ConstantForm evaluate_at_point(const DiffForm& a, std::span<const Scalar> pt);

/// Rows of coefficient vectors in the basis all_multi_indices(n, degree).
/// Throws InputError for mixed charts or degrees.
std::vector<std::vector<Scalar>> coefficient_rows(std::span<const DiffForm> forms, std::span<const Scalar> pt);

/// True iff the evaluated forms are linearly independent. Empty input is vacuously independent.
bool independent_at_point(std::span<const DiffForm> forms, std::span<const Scalar> pt);

/// Searches for a maximal minor of the symbolic coefficient matrix that is a
/// nonzero constant polynomial; such a minor proves independence at every point
/// of the chart. Returns the chosen MultiIndex columns. At most `max_minors`
/// column subsets are tried.
std::optional<std::vector<MultiIndex>> constant_minor_certificate(std::span<const DiffForm> forms,
                                                                  std::size_t max_minors = 20000);

}  // namespace nonholonomy
