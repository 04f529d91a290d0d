#pragma once

#include <cstddef>
#include <vector>

#include "nonholonomy/forms.hpp"
#include "nonholonomy/multi_index.hpp"
#include "nonholonomy/sampling.hpp"

namespace testing_support {

using namespace nonholonomy;

inline std::size_t below(RationalSampler& rng, std::size_t bound) { return static_cast<std::size_t>(rng.raw() % bound); }

/// Up to `terms` monomials of total degree <= max_degree.
inline Polynomial random_polynomial(const Chart& chart, RationalSampler& rng, std::size_t terms = 3,
                                    std::size_t max_degree = 2) {
  Polynomial p(chart);
  for (std::size_t t = 0; t < terms; ++t) {
    Exponent e(chart.dim(), 0);
    const std::size_t deg = below(rng, max_degree + 1);
    for (std::size_t j = 0; j < deg; ++j) ++e[below(rng, chart.dim())];
    p += Polynomial::monomial(chart, e, rng.next());
  }
  return p;
}

inline DiffForm random_form(const Chart& chart, std::size_t degree, RationalSampler& rng, std::size_t terms = 3) {
  DiffForm out(chart, degree);
  const auto basis = all_multi_indices(chart.dim(), degree);
  if (basis.empty()) return out;
  for (std::size_t t = 0; t < terms; ++t) out.add_term(basis[below(rng, basis.size())], random_polynomial(chart, rng));
  return out;
}

inline VectorField random_field(const Chart& chart, RationalSampler& rng) {
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < chart.dim(); ++i) comps.push_back(random_polynomial(chart, rng, 2));
  return VectorField(chart, std::move(comps));
}

}  // namespace testing_support
