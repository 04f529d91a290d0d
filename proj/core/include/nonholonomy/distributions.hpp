#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nonholonomy/chart.hpp"
#include "nonholonomy/forms.hpp"
#include "nonholonomy/scalar.hpp"

namespace nonholonomy {

/// A rank-r tangent distribution on a chart, presented by a spanning frame,
/// an annihilating coframe, or both.
///
/// The declared rank is validated lazily at the points where the distribution
/// is queried; a presentation whose pointwise rank drops there raises
/// DegeneratePresentation.
class Distribution {
 public:
  static Distribution from_frame(const Chart& chart, std::vector<VectorField> frame);
  static Distribution from_coframe(const Chart& chart, std::vector<DiffForm> coframe);
  /// Both presentations of the same distribution; rank = frame.size() = n - coframe.size().
  /// Throws ConsistencyError when some coframe form does not annihilate some frame field.
  static Distribution from_both(const Chart& chart, std::vector<VectorField> frame, std::vector<DiffForm> coframe);

  const Chart& chart() const noexcept { return chart_; }
  std::size_t rank() const noexcept { return rank_; }
  const std::optional<std::vector<VectorField>>& frame() const noexcept { return frame_; }
  const std::optional<std::vector<DiffForm>>& coframe() const noexcept { return coframe_; }

  /// The frame, or one derived from the coframe when it has a unit minor.
  /// Throws InputError when neither is available.
  std::vector<VectorField> polynomial_frame() const;

 private:
  Distribution(const Chart& chart, std::size_t rank) : chart_(chart), rank_(rank) {}

  Chart chart_;
  std::size_t rank_;
  std::optional<std::vector<VectorField>> frame_;
  std::optional<std::vector<DiffForm>> coframe_;
};

enum class Truth { False, True, Indeterminate };

std::string to_string(Truth t);

/// Outcome of a pointwise criterion over a sample set.
struct Verdict {
  Truth value = Truth::Indeterminate;
  /// Points checked, in canonical (input) order.
  std::vector<Point> witnesses;
  /// First sample where the criterion failed.
  std::optional<Point> counterexample;
  /// A constant nonzero maximal minor was found: the verdict holds at every chart point.
  bool certificate = false;

  bool sample_based() const noexcept { return !certificate; }
  explicit operator bool() const noexcept { return value == Truth::True; }
};

/// Ranks of D ⊂ D^2 ⊂ ... at a point.
struct DerivedFlag {
  Point point;
  std::vector<std::size_t> ranks;
  /// False when the depth cap stopped growth before stabilization.
  bool stabilized = false;
};

/// Exact basis of the joint kernel of a coframe at pt, one free coordinate per vector.
/// Throws DegeneratePresentation when the evaluated coframe loses rank.
std::vector<std::vector<Scalar>> pointwise_kernel(const Chart& chart, std::span<const DiffForm> coframe,
                                                  std::span<const Scalar> pt);

/// Polynomial frame of ker(coframe) when some maximal minor of the coframe
/// matrix is a nonzero constant; std::nullopt otherwise.
std::optional<std::vector<VectorField>> frame_from_coframe(const Chart& chart, std::span<const DiffForm> coframe);

/// Brackets are taken up to depth_cap levels (default n); ranks then has at most depth_cap + 1 entries.
DerivedFlag derived_flag_at(const Distribution& d, std::span<const Scalar> pt,
                            std::optional<std::size_t> depth_cap = std::nullopt);

Verdict has_derived_length_one(const Distribution& d, std::span<const Point> pts);

/// omega_1 ^ ... ^ omega_{n-r} ^ d omega_i are pointwise independent.
Verdict check_dbasis_condition(const Chart& chart, std::span<const DiffForm> coframe, std::span<const Point> pts);

/// alpha_1 ^ ... ^ alpha_m ^ (d alpha_i)^k pointwise independent, m = n - 2k - 1.
/// Throws InputError unless 2k+2 <= n <= 4k+2 and the coframe has m forms.
Verdict check_mni(const Chart& chart, std::span<const DiffForm> coframe, std::size_t k, std::span<const Point> pts);

/// alpha_1 ^ ... ^ alpha_m ^ (omega_i)^k pointwise independent.
Verdict check_almost_mni(const Chart& chart, std::span<const DiffForm> coframe, std::span<const DiffForm> omegas,
                         std::size_t k, std::span<const Point> pts);

/// Whether rank r admits a maximally non-integrable derived-length-one
/// distribution in dimension n: for odd r = 2k+1, 2k+2 <= n <= 4k+2.
struct DimensionBound {
  std::size_t r = 0;
  std::size_t n = 0;
  std::optional<std::size_t> k;
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool holds = false;

  std::string describe() const;
};

DimensionBound mni_dimension_bound(std::size_t r, std::size_t n);

struct TypeReport {
  std::size_t r = 0;
  std::size_t n = 0;
  DimensionBound bound;
};

/// Type (r, n) of a derived-length-one distribution. Throws InputError naming
/// the failing point when the flag is not [r, n] somewhere.
TypeReport type_of(const Distribution& d, std::span<const Point> pts);

}  // namespace nonholonomy
