#include <gtest/gtest.h>

#include <numeric>

#include "json.hpp"
#include "nonholonomy/errors.hpp"
#include "nonholonomy/singularity.hpp"
#include "oracles.hpp"

using namespace nonholonomy;

namespace {

// alpha_i = dx_{2k+1+i}, omega zero.
FiberPoint coordinate_alphas(std::size_t n, std::size_t k) {
  FiberPoint fp(n, k);
  for (std::size_t i = 0; i < fp.m(); ++i) fp.a(i, 2 * k + 1 + i) = 1;
  return fp;
}

const std::vector<std::pair<std::size_t, std::size_t>> kPairs{{4, 1}, {5, 1}, {6, 1}, {6, 2}};

}  // namespace

TEST(FiberPoint, ShapeAndBounds) {
  EXPECT_EQ(FiberPoint(4, 1).m(), 1U);
  EXPECT_EQ(FiberPoint(6, 2).m(), 1U);
  EXPECT_EQ(FiberPoint(5, 1).m(), 2U);
  EXPECT_EQ(FiberPoint(6, 1).m(), 3U);
  EXPECT_EQ(FiberPoint(7, 2).m(), 2U);
  EXPECT_THROW(FiberPoint(3, 1), InputError);
  EXPECT_THROW(FiberPoint(7, 1), InputError);
  EXPECT_THROW(FiberPoint(5, 0), InputError);
  FiberPoint fp(4, 1);
  EXPECT_THROW(fp.z(0, 2, 1), InputError);
}

TEST(FiberPoint, RelabelingFlipsReversedPairs) {
  FiberPoint fp(4, 1);
  fp.z(0, 0, 1) = 5;
  fp.a(0, 0) = 7;
  const std::vector<std::size_t> swap01{1, 0, 2, 3};
  const FiberPoint r = fp.relabeled(swap01);
  EXPECT_EQ(r.z(0, 0, 1), Scalar(-5));
  EXPECT_EQ(r.a(0, 1), Scalar(7));
  const std::vector<std::size_t> bad{0, 0, 1, 2};
  EXPECT_THROW(fp.relabeled(bad), InputError);
}

TEST(Coefficients, AOfFourDimensionalOmega) {
  FiberPoint fp(4, 1);
  RationalSampler rng(1);
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t l = j + 1; l < 4; ++l) fp.z(0, j, l) = rng.next();
  }
  // k = 1: A_{jl} = z_{jl}.
  const auto a = a_coefficients(fp, 0);
  EXPECT_EQ(a.at(MultiIndex::of({0, 2})), fp.z(0, 0, 2));

  const Chart c = Chart::numbered("x", 4);
  std::map<MultiIndex, Polynomial> symbolic = pfaffian_power_coefficients(fp.omega(0, c), 2);
  const Scalar expected = 2 * (fp.z(0, 0, 1) * fp.z(0, 2, 3) - fp.z(0, 0, 2) * fp.z(0, 1, 3) + fp.z(0, 0, 3) * fp.z(0, 1, 2));
  EXPECT_EQ(symbolic.at(MultiIndex::of({0, 1, 2, 3})).constant_term(), expected);
}

TEST(Coefficients, BOfSimpleFibers) {
  FiberPoint fp = coordinate_alphas(4, 1);
  fp.z(0, 0, 1) = 1;
  EXPECT_EQ(b_coefficients(fp, 0), (std::vector<Scalar>{0, 0, 1, 0}));

  FiberPoint five = coordinate_alphas(5, 1);
  five.z(0, 0, 1) = 1;
  EXPECT_EQ(b_coefficients(five, 0)[2], Scalar(1));
  EXPECT_THROW(b_coefficients(five, 2), InputError);
}

TEST(Coefficients, DependenceMultipliers) {
  const std::vector<std::vector<Scalar>> betas{{1, 2}, {2, 4}};
  EXPECT_EQ(*dependence_multipliers(betas), (std::vector<Scalar>{2, -1}));
  const std::vector<std::vector<Scalar>> same{{0, 3}, {0, 3}};
  EXPECT_EQ(*dependence_multipliers(same), (std::vector<Scalar>{1, -1}));
  const std::vector<std::vector<Scalar>> free{{1, 0}, {0, 1}};
  EXPECT_FALSE(dependence_multipliers(free));
}

TEST(CCoefficients, CoordinateAlphaOnR4) {
  const CCoefficients c = extract_c_coefficients(coordinate_alphas(4, 1));
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t l = 1; l < 4; ++l) {
      // alpha = dx_3 kills every term touching x_3.
      const bool hit = (r == 1 && l == 2) || (r == 2 && l == 1);
      EXPECT_EQ(c.cmat[0][r][l], Scalar(hit ? 1 : 0)) << r << "," << l;
    }
  }
  EXPECT_EQ(c.first_row(), (std::vector<Scalar>{0}));
}

TEST(PrincipalSystem, AssemblyRejectsBadMultipliers) {
  RationalSampler rng(3);
  const FiberPoint fp = FiberPoint::random(5, 1, rng);
  const CCoefficients c = extract_c_coefficients(fp);
  EXPECT_THROW(assemble_principal_matrix(c, {0, 0}), InputError);
  EXPECT_THROW(assemble_principal_matrix(c, {1}), InputError);
  const std::vector<Scalar> off{c.cbar[1][0] + 1, -c.cbar[0][0]};
  if (c.cbar[0][0] * off[0] + c.cbar[1][0] * off[1] != 0) EXPECT_THROW(assemble_principal_matrix(c, off), InputError);
  const std::vector<Scalar> good{c.cbar[1][0], -c.cbar[0][0]};
  const PrincipalSystem sys = assemble_principal_matrix(c, good);
  EXPECT_EQ(sys.matrix.rows(), 4U);
  EXPECT_EQ(sys.matrix.cols(), 8U);
}

// ---------------------------------------------------------------------------
// Oracle comparisons.

TEST(CoefficientsOracle, AMatchesWedgePowerSymbolically) {
  for (std::size_t k : {1U, 2U}) {
    for (std::size_t n = 2 * k; n <= 8; ++n) {
      // omega = sum z_jl dx_j ^ dx_l with the z as symbols of a separate chart.
      std::vector<std::string> names;
      for (std::size_t j = 0; j < n; ++j) names.push_back("x" + std::to_string(j));
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = j + 1; l < n; ++l) {
          names.push_back("z" + std::to_string(j) + "_" + std::to_string(l));
          pairs.emplace_back(j, l);
        }
      }
      if (names.size() > MultiIndex::kMaxDim) continue;
      const Chart c(names);
      DiffForm w(c, 2);
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        w.add_term(MultiIndex::of({pairs[p].first, pairs[p].second}), Polynomial::variable(c, n + p));
      }
      const DiffForm power = wedge_power(w, k);
      const auto a = pfaffian_power_coefficients(w, k);
      ASSERT_EQ(a.size(), power.terms().size()) << n;
      for (const auto& [index, f] : power.terms()) ASSERT_EQ(a.at(index), f) << n << " " << k;
    }
  }
}

TEST(CoefficientsOracle, BMatchesPermutationSum) {
  for (const auto& [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 1}, {5, 1}, {6, 1}}) {
    for (std::uint64_t s = 0; s < 100; ++s) {
      RationalSampler rng(derive_seed(500 + n, s));
      const FiberPoint fp = FiberPoint::random(n, k, rng);
      for (std::size_t i = 0; i < fp.m(); ++i) ASSERT_EQ(b_coefficients(fp, i), oracle::b_by_permutation_sum(fp, i));
    }
  }
}

TEST(CoefficientsOracle, ExtractionReproducesB) {
  for (const auto& [n, k] : kPairs) {
    for (std::uint64_t s = 0; s < 40; ++s) {
      RationalSampler rng(derive_seed(600 + n + 10 * k, s));
      const FiberPoint fp = FiberPoint::random(n, k, rng);
      const CCoefficients c = extract_c_coefficients(fp);
      for (std::size_t i = 0; i < fp.m(); ++i) {
        const auto b = b_coefficients(fp, i);
        for (std::size_t r = 0; r < n; ++r) {
          Scalar affine = c.cbar[i][r];
          for (std::size_t l = 1; l < n; ++l) affine += c.cmat[i][r][l] * fp.z(i, 0, l);
          ASSERT_EQ(affine, b[r]);
        }
      }
    }
  }
}

// The printed closed form for C^i_r(l) holds up to sign with a^1..a^m as the
// covector factors. With every factor a^i it is an antisymmetrised product of
// one covector and vanishes once m >= 2.
TEST(CoefficientsOracle, ClosedFormReadings) {
  for (const auto& [n, k] : kPairs) {
    for (std::uint64_t s = 0; s < 30; ++s) {
      RationalSampler rng(derive_seed(700 + n + 10 * k, s));
      const FiberPoint fp = FiberPoint::random(n, k, rng);
      const CCoefficients c = extract_c_coefficients(fp);
      for (std::size_t i = 0; i < fp.m(); ++i) {
        for (std::size_t r = 1; r < n; ++r) {
          for (std::size_t l = 1; l < n; ++l) {
            const Scalar mixed = oracle::c_closed_form(fp, i, r, l, false);
            const Scalar same = oracle::c_closed_form(fp, i, r, l, true);
            ASSERT_EQ(abs(mixed), abs(c.cmat[i][r][l])) << n << k << i << r << l;
            if (fp.m() == 1) {
              ASSERT_EQ(same, mixed);
            } else {
              ASSERT_EQ(same, 0);
            }
          }
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Structural claims on every extraction.

TEST(Structure, ExtractionInvariantsAndPseudoSymmetry) {
  for (const auto& [n, k] : kPairs) {
    for (std::uint64_t s = 0; s < 200; ++s) {
      RationalSampler rng(derive_seed(800 + n + 10 * k, s));
      const FiberPoint fp = FiberPoint::random(n, k, rng);
      const CCoefficients c = extract_c_coefficients(fp);  // throws on a broken invariant
      for (std::size_t i = 0; i < c.m; ++i) {
        for (std::size_t r = 1; r < n; ++r) ASSERT_EQ(c.cmat[i][r][r], 0);
        for (std::size_t l = 1; l < n; ++l) ASSERT_EQ(c.cmat[i][0][l], 0);
      }
      const PseudoSymmetry ps = pseudo_symmetry_check(c);
      ASSERT_TRUE(ps.holds) << n << "," << k << " sample " << s;
    }
  }
}

TEST(Structure, PrincipalDirectionDoesNotChangeTheInvariants) {
  RationalSampler rng(9);
  const FiberPoint fp = FiberPoint::random(5, 1, rng);
  for (std::size_t d = 0; d < 5; ++d) {
    std::vector<std::size_t> perm(5);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::swap(perm[0], perm[d]);
    EXPECT_TRUE(pseudo_symmetry_check(extract_c_coefficients(fp.relabeled(perm))).holds);
  }
}

// ---------------------------------------------------------------------------
// Probe.

TEST(ThinnessProbe, DeterministicAcrossThreadCounts) {
  ProbeOptions one;
  one.threads = 1;
  ProbeOptions many;
  many.threads = 4;
  const auto a = thinness_probe(5, 1, 60, 11, one);
  const auto b = thinness_probe(5, 1, 60, 11, many);
  EXPECT_EQ(a.rank_histogram, b.rank_histogram);
  EXPECT_EQ(a.empty_fiber_count, b.empty_fiber_count);
  EXPECT_EQ(a.verdict, b.verdict);
  many.threads = 1;
  EXPECT_EQ(to_json(a), to_json(thinness_probe(5, 1, 60, 11, many)));
}

TEST(ThinnessProbe, ConditioningMakesEveryMEqualsOneFiberAdmissible) {
  ProbeOptions opts;
  opts.condition_first_row = true;
  for (const auto& [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 1}, {6, 2}}) {
    const auto r = thinness_probe(n, k, 50, 5, opts);
    EXPECT_EQ(r.empty_fiber_count, 0U);
    EXPECT_FALSE(r.rank_histogram.count(1));
    EXPECT_EQ(r.verdict, "PASS");
  }
}

TEST(ThinnessProbe, NoRankOneOnSmallRuns) {
  for (const auto& [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 1}, {5, 1}, {6, 1}, {6, 2}, {7, 2}}) {
    const auto r = thinness_probe(n, k, 40, 21);
    EXPECT_FALSE(r.rank_histogram.count(1)) << n << "," << k;
    EXPECT_TRUE(r.passed());
    std::size_t total = r.empty_fiber_count;
    for (const auto& [rank, count] : r.rank_histogram) total += count;
    EXPECT_EQ(total, 40U);
  }
}

TEST(ThinnessProbe, OtherPrincipalDirections) {
  ProbeOptions opts;
  for (std::size_t d = 1; d < 5; ++d) {
    opts.principal_direction = d;
    EXPECT_FALSE(thinness_probe(5, 1, 20, 2, opts).rank_histogram.count(1));
  }
  opts.principal_direction = 5;
  EXPECT_THROW(thinness_probe(5, 1, 20, 2, opts), InputError);
}

TEST(ThinnessProbe, JsonSchema) {
  const auto r = thinness_probe(4, 1, 10, 3);
  const auto j = nlohmann::ordered_json::parse(to_json(r));
  std::vector<std::string> keys;
  for (const auto& [key, value] : j.items()) keys.push_back(key);
  EXPECT_EQ(keys, (std::vector<std::string>{"n", "k", "seed", "samples", "rank_histogram", "empty_fiber_count",
                                            "rank0_inconsistent_count", "conditioned", "principal_direction",
                                            "verdict"}));
  EXPECT_EQ(j["samples"], 10);
}

TEST(ThinnessProbe, RejectsOutOfRangeDimensions) {
  EXPECT_THROW(thinness_probe(8, 1, 10, 1), InputError);
  EXPECT_THROW(thinness_probe(3, 1, 10, 1), InputError);
}
