#include "nonholonomy/singularity.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <thread>

#include "json.hpp"
#include "nonholonomy/distributions.hpp"
#include "nonholonomy/errors.hpp"

namespace nonholonomy {

// ---------------------------------------------------------------------------
// FiberPoint

FiberPoint::FiberPoint(std::size_t n, std::size_t k) : n_(n), k_(k) {
  if (k == 0) throw InputError("k must be positive");
  const auto bound = mni_dimension_bound(2 * k + 1, n);
  if (!bound.holds) throw InputError(bound.describe());
  // Fiber charts carry n base coordinates plus n-1 principal symbols.
  if (2 * n - 1 > MultiIndex::kMaxDim) throw InputError("fiber model supports n <= 32");
  m_ = n - 2 * k - 1;
  a_.assign(m_ * n_, Scalar(0));
  z_.assign(m_ * n_ * n_, Scalar(0));
}

std::size_t FiberPoint::z_slot(std::size_t i, std::size_t j, std::size_t l) const {
  if (i >= m_ || j >= l || l >= n_) throw InputError("z index must satisfy j < l < n and i < m");
  return (i * n_ + j) * n_ + l;
}

FiberPoint FiberPoint::random(std::size_t n, std::size_t k, RationalSampler& sampler) {
  FiberPoint fp(n, k);
  for (std::size_t i = 0; i < fp.m_; ++i) {
    for (std::size_t j = 0; j < n; ++j) fp.a(i, j) = sampler.next();
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = j + 1; l < n; ++l) fp.z(i, j, l) = sampler.next();
    }
  }
  return fp;
}

FiberPoint FiberPoint::relabeled(std::span<const std::size_t> perm) const {
  if (perm.size() != n_) throw InputError("permutation length differs from n");
  std::vector<bool> hit(n_, false);
  for (auto p : perm) {
    if (p >= n_ || hit[p]) throw InputError("not a permutation of the base coordinates");
    hit[p] = true;
  }
  FiberPoint out(n_, k_);
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out.a(i, perm[j]) = a(i, j);
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t l = j + 1; l < n_; ++l) {
        const std::size_t pj = perm[j];
        const std::size_t pl = perm[l];
        if (pj < pl) {
          out.z(i, pj, pl) = z(i, j, l);
        } else {
          out.z(i, pl, pj) = -z(i, j, l);
        }
      }
    }
  }
  return out;
}

DiffForm FiberPoint::alpha(std::size_t i, const Chart& chart) const {
  if (chart.dim() < n_) throw InputError("chart smaller than the fiber's base");
  DiffForm out(chart, 1);
  for (std::size_t j = 0; j < n_; ++j) out.add_term(MultiIndex::single(j), Polynomial(chart, a(i, j)));
  return out;
}

DiffForm FiberPoint::omega(std::size_t i, const Chart& chart) const {
  if (chart.dim() < n_) throw InputError("chart smaller than the fiber's base");
  DiffForm out(chart, 2);
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t l = j + 1; l < n_; ++l) out.add_term(MultiIndex::of({j, l}), Polynomial(chart, z(i, j, l)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// A and B coefficients

namespace {

int permutation_sign(std::span<const std::size_t> seq) {
  std::size_t inversions = 0;
  for (std::size_t a = 0; a < seq.size(); ++a) {
    for (std::size_t b = a + 1; b < seq.size(); ++b) inversions += seq[a] > seq[b];
  }
  return inversions % 2 ? -1 : 1;
}

Chart base_chart(std::size_t n) { return Chart::numbered("x", n); }

// Base coordinates x1..xn followed by the principal symbols z1_2..z1_n.
Chart principal_chart(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t j = 1; j <= n; ++j) names.push_back("x" + std::to_string(j));
  for (std::size_t l = 2; l <= n; ++l) names.push_back("z1_" + std::to_string(l));
  return Chart(std::move(names));
}

// Coefficients of alpha_1 ^ ... ^ alpha_m ^ (omega)^k on the omit-r basis.
std::vector<Polynomial> omitted_basis_coefficients(const FiberPoint& fp, const DiffForm& omega, const Chart& chart) {
  std::vector<DiffForm> alphas;
  for (std::size_t j = 0; j < fp.m(); ++j) alphas.push_back(fp.alpha(j, chart));
  const DiffForm top = wedge(wedge_all(chart, alphas), wedge_power(omega, fp.k()));
  std::vector<Polynomial> out;
  out.reserve(fp.n());
  for (std::size_t r = 0; r < fp.n(); ++r) out.push_back(top.coefficient(MultiIndex::all_but(fp.n(), r)));
  return out;
}

}  // namespace

std::map<MultiIndex, Polynomial> pfaffian_power_coefficients(const DiffForm& omega, std::size_t k) {
  if (omega.degree() != 2) throw InputError("expected a 2-form");
  if (k == 0) throw InputError("k must be positive");
  std::uint64_t used = 0;
  for (const auto& [index, f] : omega.terms()) used |= index.bits();
  const std::vector<std::size_t> pool = MultiIndex::from_bits(used).indices();

  std::map<MultiIndex, Polynomial> out;
  if (2 * k > pool.size()) return out;
  for (const MultiIndex& pick : all_multi_indices(pool.size(), 2 * k)) {
    std::vector<std::size_t> j;
    for (auto p : pick.indices()) j.push_back(pool[p]);
    Polynomial sum(omega.chart());
    std::vector<std::size_t> l = j;
    do {
      bool admissible = true;
      for (std::size_t t = 0; t < 2 * k && admissible; t += 2) admissible = l[t] < l[t + 1];
      if (!admissible) continue;
      Polynomial term(omega.chart(), Scalar(permutation_sign(l)));
      for (std::size_t t = 0; t < 2 * k && !term.is_zero(); t += 2) {
        term *= omega.coefficient(MultiIndex::of({l[t], l[t + 1]}));
      }
      sum += term;
    } while (std::next_permutation(l.begin(), l.end()));
    if (!sum.is_zero()) out.emplace(MultiIndex::of(j), std::move(sum));
  }
  return out;
}

std::map<MultiIndex, Scalar> a_coefficients(const FiberPoint& fp, std::size_t i) {
  if (i >= fp.m()) throw InputError("form index out of range");
  const Chart chart = base_chart(fp.n());
  std::map<MultiIndex, Scalar> out;
  for (const auto& [index, f] : pfaffian_power_coefficients(fp.omega(i, chart), fp.k())) {
    out.emplace(index, f.constant_term());
  }
  return out;
}

std::vector<Scalar> b_coefficients(const FiberPoint& fp, std::size_t i) {
  if (i >= fp.m()) throw InputError("form index out of range");
  const Chart chart = base_chart(fp.n());
  std::vector<Scalar> out;
  for (const auto& p : omitted_basis_coefficients(fp, fp.omega(i, chart), chart)) out.push_back(p.constant_term());
  return out;
}

std::optional<std::vector<Scalar>> dependence_multipliers(std::span<const std::vector<Scalar>> betas) {
  if (betas.empty()) throw InputError("no vectors given");
  const std::size_t len = betas.front().size();
  RationalMatrix columns(len, betas.size());
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (betas[i].size() != len) throw InputError("vectors of different lengths");
    for (std::size_t r = 0; r < len; ++r) columns(r, i) = betas[i][r];
  }
  auto basis = kernel(columns);
  if (basis.empty()) return std::nullopt;
  auto c = std::move(basis.front());
  const auto lead = std::find_if(c.begin(), c.end(), [](const Scalar& s) { return s != 0; });
  if (*lead < 0) {
    for (auto& s : c) s = -s;
  }
  return c;
}

// ---------------------------------------------------------------------------
// C coefficients

std::vector<Scalar> CCoefficients::first_row() const {
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(cbar[i][0]);
  return out;
}

CCoefficients extract_c_coefficients(const FiberPoint& fp) {
  const std::size_t n = fp.n();
  const Chart chart = principal_chart(n);
  const auto flags = std::make_unique<bool[]>(chart.dim());
  for (std::size_t s = n; s < chart.dim(); ++s) flags[s] = true;
  const std::span<const bool> principal(flags.get(), chart.dim());

  CCoefficients out;
  out.n = n;
  out.m = fp.m();
  out.cbar.assign(out.m, std::vector<Scalar>(n, Scalar(0)));
  out.cmat.assign(out.m, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar(0))));

  for (std::size_t i = 0; i < fp.m(); ++i) {
    DiffForm omega = fp.omega(i, chart);
    for (std::size_t l = 1; l < n; ++l) {
      const MultiIndex pair = MultiIndex::of({0, l});
      omega.add_term(pair, -omega.coefficient(pair));
      omega.add_term(pair, Polynomial::variable(chart, n + l - 1));
    }
    const auto b = omitted_basis_coefficients(fp, omega, chart);
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t deg = b[r].degree_in(principal);
      if (deg > 1) throw ConsistencyError("B is not affine in the principal symbols");
      if (r == 0 && deg != 0) throw ConsistencyError("B^i_1 depends on the principal symbols");
      out.cbar[i][r] = b[r].constant_term();
      for (std::size_t l = 1; l < n; ++l) {
        Exponent e(chart.dim(), 0);
        e[n + l - 1] = 1;
        out.cmat[i][r][l] = b[r].coefficient(e);
      }
      if (out.cmat[i][r][r] != 0) throw ConsistencyError("C^i_r(r) is nonzero");
    }
  }
  return out;
}

PseudoSymmetry pseudo_symmetry_check(const CCoefficients& coeffs) {
  PseudoSymmetry out;
  for (std::size_t i = 0; i < coeffs.m; ++i) {
    for (std::size_t r = 1; r < coeffs.n; ++r) {
      for (std::size_t l = r + 1; l < coeffs.n; ++l) {
        const Scalar& x = coeffs.cmat[i][r][l];
        const Scalar& y = coeffs.cmat[i][l][r];
        int sign = 0;
        if (x == 0 && y == 0) {
          sign = 0;
        } else if (x == y) {
          sign = 1;
        } else if (x == -y) {
          sign = -1;
        } else {
          out.holds = false;
        }
        out.signs.push_back({i, r, l, sign});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Principal system

bool PrincipalSystem::consistent() const {
  RationalMatrix augmented(matrix.rows(), matrix.cols() + 1);
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (std::size_t c2 = 0; c2 < matrix.cols(); ++c2) augmented(r, c2) = matrix(r, c2);
    augmented(r, matrix.cols()) = rhs[r];
  }
  return rank(augmented) == rank(matrix);
}

PrincipalSystem assemble_principal_matrix(const CCoefficients& coeffs, std::vector<Scalar> c) {
  const std::size_t n = coeffs.n;
  const std::size_t m = coeffs.m;
  if (c.size() != m) throw InputError("expected " + std::to_string(m) + " multipliers");
  if (std::all_of(c.begin(), c.end(), [](const Scalar& s) { return s == 0; })) {
    throw InputError("multipliers must not all vanish");
  }
  Scalar first = 0;
  for (std::size_t i = 0; i < m; ++i) first += c[i] * coeffs.cbar[i][0];
  if (first != 0) throw InputError("multipliers violate the first-row constraint: Sigma and P do not meet");

  PrincipalSystem sys;
  sys.n = n;
  sys.m = m;
  sys.coeffs = coeffs;
  sys.matrix = RationalMatrix(n - 1, (n - 1) * m);
  sys.rhs.assign(n - 1, Scalar(0));
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t l = 1; l < n; ++l) sys.matrix(r - 1, i * (n - 1) + (l - 1)) = c[i] * coeffs.cmat[i][r][l];
      sys.rhs[r - 1] -= c[i] * coeffs.cbar[i][r];
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (sys.matrix(r - 1, i * (n - 1) + (r - 1)) != 0) throw ConsistencyError("nonzero entry at C^i_r(r)");
    }
  }
  sys.c = std::move(c);
  return sys;
}

PrincipalSystem assemble_principal_matrix(const FiberPoint& fp, std::vector<Scalar> c) {
  return assemble_principal_matrix(extract_c_coefficients(fp), std::move(c));
}

std::size_t principal_rank(const PrincipalSystem& sys) { return rank(sys.matrix); }

// ---------------------------------------------------------------------------
// Thinness probe

namespace {

struct SampleOutcome {
  bool empty_fiber = false;
  std::size_t rank = 0;
  bool rank0_inconsistent = false;
};

// For m = 1, B^1_0 is linear in alpha: shift one a-coefficient to make it vanish.
void condition_first_row(FiberPoint& fp) {
  if (fp.m() != 1) return;
  const Scalar b = b_coefficients(fp, 0)[0];
  if (b == 0) return;
  for (std::size_t p = 1; p < fp.n(); ++p) {
    FiberPoint unit = fp;
    for (std::size_t j = 0; j < fp.n(); ++j) unit.a(0, j) = j == p ? 1 : 0;
    const Scalar g = b_coefficients(unit, 0)[0];
    if (g != 0) {
      fp.a(0, p) -= b / g;
      return;
    }
  }
}

SampleOutcome probe_one(std::size_t n, std::size_t k, std::uint64_t seed, std::size_t index,
                        const ProbeOptions& options) {
  RationalSampler sampler(derive_seed(seed, index));
  FiberPoint fp = FiberPoint::random(n, k, sampler);
  if (options.principal_direction != 0) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::swap(perm[0], perm[options.principal_direction]);
    fp = fp.relabeled(perm);
  }
  if (options.condition_first_row) condition_first_row(fp);

  const CCoefficients coeffs = extract_c_coefficients(fp);
  RationalMatrix constraint(1, fp.m());
  const auto first = coeffs.first_row();
  for (std::size_t i = 0; i < fp.m(); ++i) constraint(0, i) = first[i];
  const auto basis = kernel(constraint);

  SampleOutcome out;
  if (basis.empty()) {
    out.empty_fiber = true;
    return out;
  }
  std::vector<Scalar> c(fp.m(), Scalar(0));
  for (const auto& v : basis) {
    const Scalar lambda = sampler.next_nonzero();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += lambda * v[i];
  }
  const PrincipalSystem sys = assemble_principal_matrix(coeffs, std::move(c));
  out.rank = principal_rank(sys);
  out.rank0_inconsistent = out.rank == 0 && !sys.consistent();
  return out;
}

}  // namespace

ProbeReport thinness_probe(std::size_t n, std::size_t k, std::size_t samples, std::uint64_t seed,
                           const ProbeOptions& options) {
  if (k == 0) throw InputError("k must be positive");
  const auto bound = mni_dimension_bound(2 * k + 1, n);
  if (!bound.holds) throw InputError(bound.describe());
  if (options.principal_direction >= n) throw InputError("principal direction out of range");

  std::vector<SampleOutcome> outcomes(samples);
  std::size_t threads = options.threads ? options.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(samples, 1));

  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t s = t; s < samples; s += threads) outcomes[s] = probe_one(n, k, seed, s, options);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ProbeReport report;
  report.n = n;
  report.k = k;
  report.seed = seed;
  report.samples = samples;
  report.options = options;
  std::size_t meets = 0;
  for (const auto& o : outcomes) {
    if (o.empty_fiber) {
      ++report.empty_fiber_count;
      continue;
    }
    ++report.rank_histogram[o.rank];
    if (o.rank0_inconsistent) {
      ++report.rank0_inconsistent_count;
    } else {
      ++meets;
    }
  }
  if (report.rank_histogram.count(1)) {
    report.verdict = "FAIL";
  } else if (meets == 0) {
    report.verdict = "AMPLE-BY-EMPTINESS";
  } else {
    report.verdict = "PASS";
  }
  return report;
}

std::string to_json(const ProbeReport& report) {
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["k"] = report.k;
  j["seed"] = report.seed;
  j["samples"] = report.samples;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [r, count] : report.rank_histogram) hist[std::to_string(r)] = count;
  j["rank_histogram"] = hist;
  j["empty_fiber_count"] = report.empty_fiber_count;
  j["rank0_inconsistent_count"] = report.rank0_inconsistent_count;
  j["conditioned"] = report.options.condition_first_row;
  j["principal_direction"] = report.options.principal_direction;
  j["verdict"] = report.verdict;
  return j.dump();
}

}  // namespace nonholonomy
