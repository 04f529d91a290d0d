#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nonholonomy/forms.hpp"
#include "nonholonomy/linalg.hpp"
#include "nonholonomy/sampling.hpp"
#include "nonholonomy/scalar.hpp"

namespace nonholonomy {

/// Jet-fiber data over one point of an n-dimensional base: m = n - 2k - 1
/// covectors alpha_i = sum_j a^i_j dx_j and 2-forms omega_i = sum_{j<l} z^i_{jl} dx_j ^ dx_l.
///
/// All indices are 0-based; z is addressed only with j < l.
class FiberPoint {
 public:
  /// Zero fiber. Throws InputError unless 2k+2 <= n <= 4k+2.
  FiberPoint(std::size_t n, std::size_t k);

  /// Every a and z entry drawn from the sampler.
  static FiberPoint random(std::size_t n, std::size_t k, RationalSampler& sampler);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t m() const noexcept { return m_; }

  const Scalar& a(std::size_t i, std::size_t j) const { return a_.at(i * n_ + j); }
  Scalar& a(std::size_t i, std::size_t j) { return a_.at(i * n_ + j); }
  const Scalar& z(std::size_t i, std::size_t j, std::size_t l) const { return z_.at(z_slot(i, j, l)); }
  Scalar& z(std::size_t i, std::size_t j, std::size_t l) { return z_.at(z_slot(i, j, l)); }

  /// Coordinates renamed by old index j -> perm[j]; z flips sign when a pair reverses order.
  FiberPoint relabeled(std::span<const std::size_t> perm) const;

  /// alpha_i and omega_i as constant-coefficient forms on `chart`, whose first n
  /// coordinates are the base coordinates.
  DiffForm alpha(std::size_t i, const Chart& chart) const;
  DiffForm omega(std::size_t i, const Chart& chart) const;

 private:
  std::size_t z_slot(std::size_t i, std::size_t j, std::size_t l) const;

  std::size_t n_;
  std::size_t k_;
  std::size_t m_;
  std::vector<Scalar> a_;
  std::vector<Scalar> z_;
};

/// Coefficients A_J of (omega)^k by the signed permutation sum: for each
/// increasing 2k-tuple J, sum over orderings (l_1, ..., l_2k) of J with
/// l_1 < l_2, ..., l_{2k-1} < l_{2k} of sgn * z_{l1 l2} ... z_{l(2k-1) l(2k)}.
/// Works for symbolic coefficients; indices range over the coordinates the form uses.
std::map<MultiIndex, Polynomial> pfaffian_power_coefficients(const DiffForm& omega, std::size_t k);

/// A^i_J for the fiber's omega_i.
std::map<MultiIndex, Scalar> a_coefficients(const FiberPoint& fp, std::size_t i);

/// B^i_r: coefficient of dx_0 ^ ... (omit dx_r) ... ^ dx_{n-1} in
/// alpha_1 ^ ... ^ alpha_m ^ (omega_i)^k, computed by exterior expansion.
std::vector<Scalar> b_coefficients(const FiberPoint& fp, std::size_t i);

/// A nonzero c with sum_i c_i beta_i = 0, scaled so its first nonzero entry is
/// positive; std::nullopt when the betas are independent.
std::optional<std::vector<Scalar>> dependence_multipliers(std::span<const std::vector<Scalar>> betas);

/// Constant and linear parts of B^i_r along the principal direction x_0, where
/// the z^i_{0 l} are treated as free symbols:
///   B^i_r = cbar[i][r] + sum_l cmat[i][r][l] * z^i_{0 l}.
/// Row r = 0 holds B^i_0, which carries no principal symbol.
struct CCoefficients {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::vector<Scalar>> cbar;
  std::vector<std::vector<std::vector<Scalar>>> cmat;

  /// B^i_0 for each i.
  std::vector<Scalar> first_row() const;
};

/// Throws ConsistencyError if some B^i_r is not affine in the principal
/// symbols, if B^i_0 depends on them, or if C^i_r(r) != 0.
CCoefficients extract_c_coefficients(const FiberPoint& fp);

struct PseudoSymmetrySign {
  std::size_t i;
  std::size_t r;
  std::size_t l;
  /// +1 when C^i_r(l) = C^i_l(r) != 0, -1 when they are negatives, 0 when both vanish.
  int sign;
};

struct PseudoSymmetry {
  bool holds = true;
  std::vector<PseudoSymmetrySign> signs;
};

/// |C^i_r(l)| = |C^i_l(r)| for every i and every 1 <= r < l < n.
PseudoSymmetry pseudo_symmetry_check(const CCoefficients& coeffs);

/// The linear system cutting Sigma ∩ P out of the principal subspace P:
/// (n-1) rows r = 1..n-1, (n-1)*m columns (block i, column l-1) with entries
/// c_i C^i_r(l), right-hand side -sum_i c_i cbar^i_r.
struct PrincipalSystem {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<Scalar> c;
  CCoefficients coeffs;
  RationalMatrix matrix;
  std::vector<Scalar> rhs;

  /// rank [matrix | rhs] == rank matrix.
  bool consistent() const;
};

/// Throws InputError when c is zero, has the wrong length, or violates the
/// first-row constraint sum_i c_i B^i_0 = 0 (then Sigma ∩ P is empty on this fiber).
PrincipalSystem assemble_principal_matrix(const FiberPoint& fp, std::vector<Scalar> c);
PrincipalSystem assemble_principal_matrix(const CCoefficients& coeffs, std::vector<Scalar> c);

std::size_t principal_rank(const PrincipalSystem& sys);

struct ProbeOptions {
  /// For m = 1, shift one a-coefficient so that B^1_0 = 0 and the fiber admits c.
  bool condition_first_row = false;
  /// Coordinate used as the principal direction (swapped with x_0 before extraction).
  std::size_t principal_direction = 0;
  /// 0 selects std::thread::hardware_concurrency().
  std::size_t threads = 0;
};

struct ProbeReport {
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  ProbeOptions options;
  std::map<std::size_t, std::size_t> rank_histogram;
  /// Fibers where no nonzero c satisfies the first-row constraint.
  std::size_t empty_fiber_count = 0;
  /// Rank-0 systems with a nonzero right-hand side (Sigma ∩ P empty).
  std::size_t rank0_inconsistent_count = 0;
  /// "PASS", "FAIL" (some rank 1) or "AMPLE-BY-EMPTINESS".
  std::string verdict;

  bool passed() const { return verdict != "FAIL"; }
};

/// Seeded random fibers; per fiber: C-extraction, a random admissible c, the
/// principal system and its rank. Samples are independent and merged in index
/// order, so the report does not depend on the thread count.
ProbeReport thinness_probe(std::size_t n, std::size_t k, std::size_t samples, std::uint64_t seed,
                           const ProbeOptions& options = {});

/// {"n", "k", "seed", "samples", "rank_histogram", "empty_fiber_count",
///  "rank0_inconsistent_count", "conditioned", "principal_direction", "verdict"}
std::string to_json(const ProbeReport& report);

}  // namespace nonholonomy
