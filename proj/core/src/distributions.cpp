#include "nonholonomy/distributions.hpp"

#include <algorithm>

#include "nonholonomy/errors.hpp"
#include "nonholonomy/linalg.hpp"

namespace nonholonomy {

// ---------------------------------------------------------------------------
// Distribution

namespace {

void require_chart(const Chart& chart, const Chart& other, const char* what) {
  if (!(chart == other)) throw InputError(std::string(what) + " lives on a different chart");
}

void validate_coframe(const Chart& chart, std::span<const DiffForm> coframe) {
  for (const auto& a : coframe) {
    require_chart(chart, a.chart(), "coframe form");
    if (a.degree() != 1) throw InputError("coframe entries must be 1-forms");
  }
  if (coframe.size() >= chart.dim()) throw InputError("coframe must have fewer than n forms");
}

}  // namespace

Distribution Distribution::from_frame(const Chart& chart, std::vector<VectorField> frame) {
  if (frame.empty() || frame.size() > chart.dim()) throw InputError("frame size must be in [1, n]");
  for (const auto& x : frame) require_chart(chart, x.chart(), "frame field");
  Distribution d(chart, frame.size());
  d.frame_ = std::move(frame);
  return d;
}

Distribution Distribution::from_coframe(const Chart& chart, std::vector<DiffForm> coframe) {
  validate_coframe(chart, coframe);
  Distribution d(chart, chart.dim() - coframe.size());
  d.coframe_ = std::move(coframe);
  return d;
}

Distribution Distribution::from_both(const Chart& chart, std::vector<VectorField> frame,
                                     std::vector<DiffForm> coframe) {
  Distribution d = from_frame(chart, std::move(frame));
  validate_coframe(chart, coframe);
  if (d.rank_ + coframe.size() != chart.dim()) throw InputError("frame and coframe sizes do not add up to n");
  for (const auto& x : *d.frame_) {
    for (const auto& a : coframe) {
      if (!interior_product(x, a).is_zero()) {
        throw ConsistencyError("frame and coframe disagree: " + a.to_string() + " does not annihilate " + x.to_string());
      }
    }
  }
  d.coframe_ = std::move(coframe);
  return d;
}

std::vector<VectorField> Distribution::polynomial_frame() const {
  if (frame_) return *frame_;
  if (coframe_) {
    if (auto f = frame_from_coframe(chart_, *coframe_)) return *f;
  }
  throw InputError("no polynomial frame: the coframe has no constant unit minor, supply a frame");
}

std::string to_string(Truth t) {
  switch (t) {
    case Truth::True:
      return "true";
    case Truth::False:
      return "false";
    case Truth::Indeterminate:
      break;
  }
  return "indeterminate";
}

// ---------------------------------------------------------------------------
// Kernels and frames

namespace {

RationalMatrix coframe_matrix(const Chart& chart, std::span<const DiffForm> coframe, std::span<const Scalar> pt) {
  RationalMatrix m(coframe.size(), chart.dim());
  for (std::size_t r = 0; r < coframe.size(); ++r) {
    for (const auto& [index, f] : coframe[r].terms()) m(r, index.indices().front()) = f.eval(pt);
  }
  return m;
}

void require_point(const Chart& chart, std::span<const Scalar> pt) {
  if (pt.size() != chart.dim()) throw InputError("point dimension differs from chart dimension");
}

void require_coframe_rank(const Chart& chart, std::span<const DiffForm> coframe, std::span<const Scalar> pt) {
  if (coframe.empty()) return;
  if (rank(coframe_matrix(chart, coframe, pt)) != coframe.size()) {
    throw DegeneratePresentation("coframe loses rank", to_string(pt));
  }
}

RationalMatrix field_matrix(std::span<const VectorField> fields, std::span<const Scalar> pt) {
  const std::size_t n = pt.size();
  RationalMatrix m(fields.size(), n);
  for (std::size_t r = 0; r < fields.size(); ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = fields[r].component(c).eval(pt);
  }
  return m;
}

}  // namespace

std::vector<std::vector<Scalar>> pointwise_kernel(const Chart& chart, std::span<const DiffForm> coframe,
                                                  std::span<const Scalar> pt) {
  require_point(chart, pt);
  validate_coframe(chart, coframe);
  require_coframe_rank(chart, coframe, pt);
  return kernel(coframe_matrix(chart, coframe, pt));
}

std::optional<std::vector<VectorField>> frame_from_coframe(const Chart& chart, std::span<const DiffForm> coframe) {
  validate_coframe(chart, coframe);
  const std::size_t n = chart.dim();
  const std::size_t m = coframe.size();
  if (m == 0) {
    std::vector<VectorField> frame;
    for (std::size_t i = 0; i < n; ++i) frame.push_back(VectorField::coordinate(chart, i));
    return frame;
  }

  std::vector<std::vector<Polynomial>> matrix(m, std::vector<Polynomial>(n, Polynomial(chart)));
  for (std::size_t r = 0; r < m; ++r) {
    for (const auto& [index, f] : coframe[r].terms()) matrix[r][index.indices().front()] = f;
  }
  const auto pivots = constant_maximal_minor(matrix);
  if (!pivots) return std::nullopt;

  auto column_block = [&](const std::vector<std::size_t>& cols) {
    std::vector<std::vector<Polynomial>> block(m);
    for (std::size_t r = 0; r < m; ++r) {
      for (auto c : cols) block[r].push_back(matrix[r][c]);
    }
    return block;
  };
  const Scalar det = determinant(column_block(*pivots)).constant_term();

  // For each free coordinate j: v = e_j - sum_s x_s e_s with M_S x = M_j (Cramer's rule).
  std::vector<VectorField> frame;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::find(pivots->begin(), pivots->end(), j) != pivots->end()) continue;
    std::vector<Polynomial> comps(n, Polynomial(chart));
    comps[j] = Polynomial(chart, Scalar(1));
    for (std::size_t s = 0; s < m; ++s) {
      auto cols = *pivots;
      cols[s] = j;
      Polynomial x = determinant(column_block(cols)) * (1 / det);
      comps[(*pivots)[s]] = -x;
    }
    frame.emplace_back(chart, std::move(comps));
  }
  return frame;
}

// ---------------------------------------------------------------------------
// Derived flags

namespace {

/// Generations of bracket fields: generation 0 is the frame, generation l+1 the
/// nonzero, previously unseen brackets [X, Y] with X in the frame and Y in generation l.
class BracketTower {
 public:
  explicit BracketTower(std::vector<VectorField> frame) : frame_(std::move(frame)) {
    fields_ = frame_;
    ends_.push_back(fields_.size());
  }

  /// Fields spanning D^{level+1} (level 0 is D itself).
  std::span<const VectorField> up_to(std::size_t level) {
    while (ends_.size() <= level) grow();
    return std::span<const VectorField>(fields_.data(), ends_[level]);
  }

 private:
  void grow() {
    const std::size_t begin = ends_.size() == 1 ? 0 : ends_[ends_.size() - 2];
    const std::size_t end = ends_.back();
    const bool first = ends_.size() == 1;
    std::vector<VectorField> fresh;
    for (std::size_t a = 0; a < frame_.size(); ++a) {
      for (std::size_t b = begin; b < end; ++b) {
        if (first && b <= a) continue;  // [X_a, X_b] = -[X_b, X_a]
        VectorField br = lie_bracket(frame_[a], fields_[b]);
        if (br.is_zero()) continue;
        const auto seen = [&](const VectorField& f) { return f == br || f == -br; };
        if (std::any_of(fields_.begin(), fields_.end(), seen) || std::any_of(fresh.begin(), fresh.end(), seen)) {
          continue;
        }
        fresh.push_back(std::move(br));
      }
    }
    for (auto& f : fresh) fields_.push_back(std::move(f));
    ends_.push_back(fields_.size());
  }

  std::vector<VectorField> frame_;
  std::vector<VectorField> fields_;
  std::vector<std::size_t> ends_;
};

DerivedFlag flag_with(BracketTower& tower, const Distribution& d, std::span<const Scalar> pt, std::size_t cap) {
  require_point(d.chart(), pt);
  const std::size_t n = d.chart().dim();
  DerivedFlag flag;
  flag.point.assign(pt.begin(), pt.end());

  const std::size_t r0 = rank(field_matrix(tower.up_to(0), pt));
  if (r0 != d.rank()) {
    throw DegeneratePresentation("frame has rank " + std::to_string(r0) + ", declared " + std::to_string(d.rank()),
                                 to_string(pt));
  }
  if (d.coframe()) require_coframe_rank(d.chart(), *d.coframe(), pt);
  flag.ranks.push_back(r0);
  if (r0 == n) {
    flag.stabilized = true;
    return flag;
  }
  for (std::size_t level = 1; level <= cap; ++level) {
    const std::size_t rk = rank(field_matrix(tower.up_to(level), pt));
    const bool done = rk == n || rk == flag.ranks.back();
    flag.ranks.push_back(rk);
    if (done) {
      flag.stabilized = true;
      return flag;
    }
  }
  return flag;
}

}  // namespace

DerivedFlag derived_flag_at(const Distribution& d, std::span<const Scalar> pt, std::optional<std::size_t> depth_cap) {
  BracketTower tower(d.polynomial_frame());
  return flag_with(tower, d, pt, depth_cap.value_or(d.chart().dim()));
}

// ---------------------------------------------------------------------------
// Verdicts

namespace {

Verdict independence_verdict(std::span<const DiffForm> forms, std::span<const Point> pts) {
  Verdict v;
  v.value = Truth::True;
  for (const auto& pt : pts) {
    v.witnesses.push_back(pt);
    if (!independent_at_point(forms, pt) && v.value == Truth::True) {
      v.value = Truth::False;
      v.counterexample = pt;
    }
  }
  if (v.value == Truth::True && constant_minor_certificate(forms)) v.certificate = true;
  return v;
}

void require_points(const Chart& chart, std::span<const Point> pts) {
  for (const auto& pt : pts) require_point(chart, pt);
}

void require_mni_shape(const Chart& chart, std::size_t coframe_size, std::size_t k) {
  if (k == 0) throw InputError("k must be positive");
  const auto bound = mni_dimension_bound(2 * k + 1, chart.dim());
  if (!bound.holds) throw InputError(bound.describe());
  if (coframe_size != chart.dim() - 2 * k - 1) {
    throw InputError("expected n-2k-1 = " + std::to_string(chart.dim() - 2 * k - 1) + " coframe forms, got " +
                     std::to_string(coframe_size));
  }
}

}  // namespace

Verdict has_derived_length_one(const Distribution& d, std::span<const Point> pts) {
  require_points(d.chart(), pts);
  const std::size_t n = d.chart().dim();
  BracketTower tower(d.polynomial_frame());
  Verdict v;
  v.value = Truth::True;
  for (const auto& pt : pts) {
    v.witnesses.push_back(pt);
    const DerivedFlag flag = flag_with(tower, d, pt, 1);
    if (flag.ranks.back() != n && v.value == Truth::True) {
      v.value = Truth::False;
      v.counterexample = pt;
    }
  }
  if (v.value == Truth::True) {
    const auto fields = tower.up_to(d.rank() == n ? 0 : 1);
    std::vector<std::vector<Polynomial>> rows;
    for (const auto& f : fields) rows.push_back(f.components());
    if (rows.size() >= n && constant_maximal_minor(rows)) v.certificate = true;
  }
  return v;
}

Verdict check_dbasis_condition(const Chart& chart, std::span<const DiffForm> coframe, std::span<const Point> pts) {
  validate_coframe(chart, coframe);
  require_points(chart, pts);
  for (const auto& pt : pts) require_coframe_rank(chart, coframe, pt);
  const DiffForm base = wedge_all(chart, coframe);
  std::vector<DiffForm> forms;
  for (const auto& a : coframe) forms.push_back(wedge(base, exterior_derivative(a)));
  return independence_verdict(forms, pts);
}

Verdict check_mni(const Chart& chart, std::span<const DiffForm> coframe, std::size_t k, std::span<const Point> pts) {
  validate_coframe(chart, coframe);
  require_mni_shape(chart, coframe.size(), k);
  std::vector<DiffForm> omegas;
  for (const auto& a : coframe) omegas.push_back(exterior_derivative(a));
  return check_almost_mni(chart, coframe, omegas, k, pts);
}

Verdict check_almost_mni(const Chart& chart, std::span<const DiffForm> coframe, std::span<const DiffForm> omegas,
                         std::size_t k, std::span<const Point> pts) {
  validate_coframe(chart, coframe);
  require_mni_shape(chart, coframe.size(), k);
  if (omegas.size() != coframe.size()) {
    throw InputError("expected " + std::to_string(coframe.size()) + " 2-forms, got " + std::to_string(omegas.size()));
  }
  for (const auto& w : omegas) {
    require_chart(chart, w.chart(), "2-form");
    if (w.degree() != 2) throw InputError("omega entries must be 2-forms");
  }
  require_points(chart, pts);
  for (const auto& pt : pts) require_coframe_rank(chart, coframe, pt);

  const DiffForm base = wedge_all(chart, coframe);
  std::vector<DiffForm> forms;
  for (const auto& w : omegas) forms.push_back(wedge(base, wedge_power(w, k)));
  return independence_verdict(forms, pts);
}

// ---------------------------------------------------------------------------
// Type

std::string DimensionBound::describe() const {
  if (!k) {
    return "rank " + std::to_string(r) + " is even; the maximal non-integrability bound applies to odd rank only";
  }
  return "rank " + std::to_string(r) + " = 2k+1 with k = " + std::to_string(*k) + " needs " + std::to_string(lower) +
         " <= n <= " + std::to_string(upper) + ", n = " + std::to_string(n) + (holds ? " (holds)" : " (violated)");
}

DimensionBound mni_dimension_bound(std::size_t r, std::size_t n) {
  DimensionBound b;
  b.r = r;
  b.n = n;
  if (r % 2 == 1) {
    b.k = (r - 1) / 2;
    b.lower = 2 * *b.k + 2;
    b.upper = 4 * *b.k + 2;
    b.holds = b.lower <= n && n <= b.upper;
  }
  return b;
}

TypeReport type_of(const Distribution& d, std::span<const Point> pts) {
  const Verdict v = has_derived_length_one(d, pts);
  if (v.value != Truth::True) {
    throw InputError("not derived length one at " + (v.counterexample ? to_string(*v.counterexample) : "?"));
  }
  return {d.rank(), d.chart().dim(), mni_dimension_bound(d.rank(), d.chart().dim())};
}

}  // namespace nonholonomy
