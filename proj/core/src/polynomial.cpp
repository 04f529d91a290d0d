#include "nonholonomy/polynomial.hpp"

#include <algorithm>

#include "nonholonomy/errors.hpp"

namespace nonholonomy {

Polynomial::Polynomial(Chart chart) : chart_(std::move(chart)) {}

Polynomial::Polynomial(Chart chart, const Scalar& constant) : chart_(std::move(chart)) {
  if (constant != 0) terms_.emplace(Exponent(chart_.dim(), 0), constant);
}

Polynomial Polynomial::variable(Chart chart, std::size_t i) {
  if (i >= chart.dim()) throw InputError("coordinate index out of range");
  Exponent e(chart.dim(), 0);
  e[i] = 1;
  return monomial(std::move(chart), std::move(e), Scalar(1));
}

Polynomial Polynomial::monomial(Chart chart, Exponent exponent, const Scalar& coefficient) {
  if (exponent.size() != chart.dim()) throw InputError("exponent length differs from chart dimension");
  Polynomial p(std::move(chart));
  if (coefficient != 0) p.terms_.emplace(std::move(exponent), coefficient);
  return p;
}

bool Polynomial::is_constant() const noexcept {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](auto v) { return v == 0; });
}

Scalar Polynomial::constant_term() const { return coefficient(Exponent(chart_.dim(), 0)); }

Scalar Polynomial::coefficient(const Exponent& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Scalar(0) : it->second;
}

std::size_t Polynomial::total_degree() const noexcept {
  std::size_t d = 0;
  for (const auto& [e, c] : terms_) {
    std::size_t s = 0;
    for (auto v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

std::size_t Polynomial::degree_in(std::span<const bool> mask) const {
  if (mask.size() != chart_.dim()) throw InputError("mask length differs from chart dimension");
  std::size_t d = 0;
  for (const auto& [e, c] : terms_) {
    std::size_t s = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (mask[i]) s += e[i];
    }
    d = std::max(d, s);
  }
  return d;
}

void Polynomial::add_term(const Exponent& e, const Scalar& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::require_same_chart(const Polynomial& o) const {
  if (!(chart_ == o.chart_)) throw InputError("polynomials live on different charts");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same_chart(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_same_chart(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_chart(b);
  Polynomial out(a.chart_);
  if (a.is_zero() || b.is_zero()) return out;
  Exponent e(a.chart_.dim());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Scalar& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Scalar Polynomial::eval(std::span<const Scalar> pt) const {
  if (pt.size() != chart_.dim()) {
    throw InputError("point has " + std::to_string(pt.size()) + " coordinates, chart has " +
                     std::to_string(chart_.dim()));
  }
  Scalar total = 0;
  Scalar term;
  for (const auto& [e, c] : terms_) {
    term = c;
    for (std::size_t i = 0; i < e.size() && term != 0; ++i) {
      for (std::uint32_t k = 0; k < e[i]; ++k) term *= pt[i];
    }
    total += term;
  }
  return total;
}

Polynomial Polynomial::diff(std::size_t i) const {
  if (i >= chart_.dim()) throw InputError("coordinate index out of range");
  Polynomial out(chart_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent d = e;
    d[i] -= 1;
    out.add_term(d, c * e[i]);
  }
  return out;
}

Polynomial Polynomial::partial_eval(std::span<const bool> mask, std::span<const Scalar> values) const {
  if (mask.size() != chart_.dim() || values.size() != chart_.dim()) {
    throw InputError("partial_eval arguments differ from chart dimension");
  }
  Polynomial out(chart_);
  for (const auto& [e, c] : terms_) {
    Exponent kept = e;
    Scalar coef = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!mask[i]) continue;
      for (std::uint32_t k = 0; k < e[i]; ++k) coef *= values[i];
      kept[i] = 0;
    }
    out.add_term(kept, coef);
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Scalar mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string factors;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::uint32_t k = 0; k < e[i]; ++k) {
        if (!factors.empty()) factors += "*";
        factors += chart_.name(i);
      }
    }
    if (factors.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += factors;
    } else {
      out += mag.get_str() + "*" + factors;
    }
  }
  return out;
}

}  // namespace nonholonomy
