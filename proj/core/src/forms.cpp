#include "nonholonomy/forms.hpp"

#include <algorithm>
#include <set>

#include "nonholonomy/errors.hpp"
#include "nonholonomy/linalg.hpp"

namespace nonholonomy {

namespace {

void require_same_chart(const Chart& a, const Chart& b, const char* op) {
  if (!(a == b)) throw InputError(std::string(op) + ": operands live on different charts");
}

std::string wedge_word(const Chart& chart, MultiIndex index) {
  std::string out;
  for (auto i : index.indices()) {
    if (!out.empty()) out += "^";
    out += "d(" + chart.name(i) + ")";
  }
  return out;
}

// Appends "coefficient * word" with sign handling; `first` tracks the leading term.
void append_term(std::string& out, bool& first, const Polynomial& f, const std::string& word) {
  std::string coef;
  bool negative = false;
  if (f.terms().size() == 1) {
    const auto& c = f.terms().begin()->second;
    negative = c < 0;
    coef = (negative ? -f : f).to_string();
  } else {
    coef = "(" + f.to_string() + ")";
  }
  if (first) {
    if (negative) out += "-";
  } else {
    out += negative ? " - " : " + ";
  }
  first = false;
  if (word.empty()) {
    out += coef;
  } else if (coef == "1") {
    out += word;
  } else {
    out += coef + "*" + word;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// DiffForm

DiffForm::DiffForm(Chart chart, std::size_t degree) : chart_(std::move(chart)), degree_(degree) {
  if (chart_.dim() > MultiIndex::kMaxDim) throw InputError("charts are limited to 64 coordinates");
}

DiffForm DiffForm::scalar(const Polynomial& f) {
  DiffForm out(f.chart(), 0);
  out.add_term(MultiIndex(), f);
  return out;
}

DiffForm DiffForm::differential(const Chart& chart, std::size_t i) {
  if (i >= chart.dim()) throw InputError("coordinate index out of range");
  DiffForm out(chart, 1);
  out.add_term(MultiIndex::single(i), Polynomial(chart, Scalar(1)));
  return out;
}

DiffForm DiffForm::basis(const Chart& chart, std::span<const std::size_t> indices, const Scalar& coefficient) {
  for (auto i : indices) {
    if (i >= chart.dim()) throw InputError("coordinate index out of range");
  }
  DiffForm out(chart, indices.size());
  const auto [sign, index] = MultiIndex::normalize(indices);
  if (sign != 0) out.add_term(index, Polynomial(chart, coefficient * sign));
  return out;
}

DiffForm DiffForm::basis(const Chart& chart, std::initializer_list<std::size_t> indices, const Scalar& coefficient) {
  return basis(chart, std::span<const std::size_t>(indices.begin(), indices.size()), coefficient);
}

Polynomial DiffForm::coefficient(MultiIndex index) const {
  const auto it = terms_.find(index);
  return it == terms_.end() ? Polynomial(chart_) : it->second;
}

void DiffForm::add_term(MultiIndex index, const Polynomial& f) {
  if (index.degree() != degree_) throw InputError("term degree differs from form degree");
  if (index.span_dim() > chart_.dim()) throw InputError("term index exceeds chart dimension");
  if (f.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(index, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void DiffForm::require_compatible(const DiffForm& o) const {
  require_same_chart(chart_, o.chart_, "form sum");
  if (degree_ != o.degree_) {
    throw InputError("cannot add forms of degree " + std::to_string(degree_) + " and " + std::to_string(o.degree_));
  }
}

DiffForm& DiffForm::operator+=(const DiffForm& o) {
  require_compatible(o);
  for (const auto& [i, f] : o.terms_) add_term(i, f);
  return *this;
}

DiffForm& DiffForm::operator-=(const DiffForm& o) {
  require_compatible(o);
  for (const auto& [i, f] : o.terms_) add_term(i, -f);
  return *this;
}

DiffForm& DiffForm::operator*=(const Polynomial& f) {
  require_same_chart(chart_, f.chart(), "scalar product");
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= f;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

DiffForm& DiffForm::operator*=(const Scalar& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [i, f] : terms_) f *= s;
  return *this;
}

DiffForm DiffForm::operator-() const {
  DiffForm out(*this);
  for (auto& [i, f] : out.terms_) f = -f;
  return out;
}

std::string DiffForm::to_string() const {
  if (terms_.empty()) {
    if (degree_ == 0 || degree_ > chart_.dim()) return "0";
    std::vector<std::size_t> first(degree_);
    for (std::size_t i = 0; i < degree_; ++i) first[i] = i;
    return "0*" + wedge_word(chart_, MultiIndex::of(first));
  }
  std::string out;
  bool first = true;
  for (const auto& [index, f] : terms_) append_term(out, first, f, wedge_word(chart_, index));
  return out;
}

// ---------------------------------------------------------------------------
// VectorField

VectorField::VectorField(const Chart& chart) : chart_(chart) {
  components_.assign(chart.dim(), Polynomial(chart));
}

VectorField::VectorField(const Chart& chart, std::vector<Polynomial> components)
    : chart_(chart), components_(std::move(components)) {
  if (components_.size() != chart_.dim()) throw InputError("vector field needs one component per coordinate");
  for (const auto& c : components_) require_same_chart(chart_, c.chart(), "vector field");
}

VectorField VectorField::coordinate(const Chart& chart, std::size_t i) {
  if (i >= chart.dim()) throw InputError("coordinate index out of range");
  VectorField out(chart);
  out.components_[i] = Polynomial(chart, Scalar(1));
  return out;
}

bool VectorField::is_zero() const noexcept {
  return std::all_of(components_.begin(), components_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

Polynomial VectorField::apply(const Polynomial& f) const {
  require_same_chart(chart_, f.chart(), "derivation");
  Polynomial out(chart_);
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].is_zero()) continue;
    Polynomial df = f.diff(i);
    if (!df.is_zero()) out += components_[i] * df;
  }
  return out;
}

std::vector<Scalar> VectorField::evaluate(std::span<const Scalar> pt) const {
  std::vector<Scalar> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c.eval(pt));
  return out;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  require_same_chart(chart_, o.chart_, "field sum");
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += o.components_[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  require_same_chart(chart_, o.chart_, "field difference");
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] -= o.components_[i];
  return *this;
}

VectorField& VectorField::operator*=(const Polynomial& f) {
  require_same_chart(chart_, f.chart(), "field scaling");
  for (auto& c : components_) c *= f;
  return *this;
}

VectorField VectorField::operator-() const {
  VectorField out(*this);
  for (auto& c : out.components_) c = -c;
  return out;
}

std::string VectorField::to_string() const {
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].is_zero()) continue;
    append_term(out, first, components_[i], "@" + chart_.name(i));
  }
  return first ? "0*@" + chart_.name(0) : out;
}

// ---------------------------------------------------------------------------
// Operations

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  require_same_chart(a.chart(), b.chart(), "wedge");
  DiffForm out(a.chart(), a.degree() + b.degree());
  for (const auto& [ia, fa] : a.terms()) {
    for (const auto& [ib, fb] : b.terms()) {
      const int s = wedge_sign(ia, ib);
      if (s == 0) continue;
      Polynomial f = fa * fb;
      if (s < 0) f = -f;
      out.add_term(MultiIndex::from_bits(ia.bits() | ib.bits()), f);
    }
  }
  return out;
}

DiffForm wedge_power(const DiffForm& w, std::size_t k) {
  if (w.degree() != 2) throw InputError("wedge_power expects a 2-form");
  if (k == 0) throw InputError("wedge_power exponent must be positive");
  // Even-degree forms commute, so square-and-multiply is valid.
  std::optional<DiffForm> acc;
  DiffForm base = w;
  while (true) {
    if (k & 1U) acc = acc ? wedge(*acc, base) : base;
    k >>= 1U;
    if (k == 0) break;
    base = wedge(base, base);
  }
  return *acc;
}

DiffForm wedge_all(const Chart& chart, std::span<const DiffForm> forms) {
  DiffForm acc = DiffForm::scalar(Polynomial(chart, Scalar(1)));
  for (const auto& f : forms) acc = wedge(acc, f);
  return acc;
}

DiffForm exterior_derivative(const DiffForm& a) {
  const Chart& chart = a.chart();
  DiffForm out(chart, a.degree() + 1);
  for (const auto& [index, f] : a.terms()) {
    for (std::size_t i = 0; i < chart.dim(); ++i) {
      if (index.contains(i)) continue;
      Polynomial df = f.diff(i);
      if (df.is_zero()) continue;
      if (insertion_sign(i, index) < 0) df = -df;
      out.add_term(index.with(i), df);
    }
  }
  return out;
}

DiffForm interior_product(const VectorField& x, const DiffForm& a) {
  require_same_chart(x.chart(), a.chart(), "interior product");
  if (a.degree() == 0) throw InputError("interior product of a 0-form");
  DiffForm out(a.chart(), a.degree() - 1);
  for (const auto& [index, f] : a.terms()) {
    for (auto i : index.indices()) {
      const Polynomial& xi = x.component(i);
      if (xi.is_zero()) continue;
      const MultiIndex rest = index.without(i);
      Polynomial g = xi * f;
      if (insertion_sign(i, rest) < 0) g = -g;
      out.add_term(rest, g);
    }
  }
  return out;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_chart(x.chart(), y.chart(), "Lie bracket");
  std::vector<Polynomial> comps;
  comps.reserve(x.chart().dim());
  for (std::size_t j = 0; j < x.chart().dim(); ++j) {
    comps.push_back(x.apply(y.component(j)) - y.apply(x.component(j)));
  }
  return VectorField(x.chart(), std::move(comps));
}

ConstantForm evaluate_at_point(const DiffForm& a, std::span<const Scalar> pt) {
  if (pt.size() != a.chart().dim()) throw InputError("point dimension differs from chart dimension");
  ConstantForm out;
  out.degree = a.degree();
  for (const auto& [index, f] : a.terms()) {
    Scalar v = f.eval(pt);
    if (v != 0) out.terms.emplace(index, std::move(v));
  }
  return out;
}

namespace {

void require_uniform(std::span<const DiffForm> forms) {
  for (const auto& f : forms) {
    require_same_chart(forms.front().chart(), f.chart(), "independence test");
    if (f.degree() != forms.front().degree()) throw InputError("independence test over forms of mixed degree");
  }
}

std::vector<MultiIndex> support_union(std::span<const DiffForm> forms) {
  std::set<MultiIndex> cols;
  for (const auto& f : forms) {
    for (const auto& [index, c] : f.terms()) cols.insert(index);
  }
  return {cols.begin(), cols.end()};
}

}  // namespace

std::vector<std::vector<Scalar>> coefficient_rows(std::span<const DiffForm> forms, std::span<const Scalar> pt) {
  if (forms.empty()) return {};
  require_uniform(forms);
  const auto cols = support_union(forms);
  std::vector<std::vector<Scalar>> rows;
  rows.reserve(forms.size());
  for (const auto& f : forms) {
    std::vector<Scalar> row(cols.size(), Scalar(0));
    const auto evaluated = evaluate_at_point(f, pt);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const auto it = evaluated.terms.find(cols[c]);
      if (it != evaluated.terms.end()) row[c] = it->second;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

bool independent_at_point(std::span<const DiffForm> forms, std::span<const Scalar> pt) {
  if (forms.empty()) return true;
  const auto rows = coefficient_rows(forms, pt);
  if (rows.front().size() < rows.size()) return false;
  return rank(RationalMatrix::from_rows(rows)) == forms.size();
}

std::optional<std::vector<MultiIndex>> constant_minor_certificate(std::span<const DiffForm> forms,
                                                                  std::size_t max_minors) {
  if (forms.empty()) return std::vector<MultiIndex>{};
  require_uniform(forms);
  const auto cols = support_union(forms);
  if (cols.size() < forms.size()) return std::nullopt;

  std::vector<std::vector<Polynomial>> matrix;
  matrix.reserve(forms.size());
  for (const auto& f : forms) {
    std::vector<Polynomial> row;
    row.reserve(cols.size());
    for (const auto& c : cols) row.push_back(f.coefficient(c));
    matrix.push_back(std::move(row));
  }
  const auto picked = constant_maximal_minor(matrix, max_minors);
  if (!picked) return std::nullopt;
  std::vector<MultiIndex> chosen;
  for (auto c : *picked) chosen.push_back(cols[c]);
  return chosen;
}

}  // namespace nonholonomy
