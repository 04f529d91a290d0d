#include <gtest/gtest.h>

#include "nonholonomy/errors.hpp"
#include "nonholonomy/forms.hpp"
#include "oracles.hpp"
#include "random_objects.hpp"

using namespace nonholonomy;
using testing_support::below;
using testing_support::random_field;
using testing_support::random_form;

namespace {

Chart xyz() { return Chart({"x", "y", "z"}); }
Polynomial var(const Chart& c, std::size_t i) { return Polynomial::variable(c, i); }
DiffForm dx(const Chart& c, std::size_t i) { return DiffForm::differential(c, i); }

int parity(std::size_t p) { return p % 2 ? -1 : 1; }

}  // namespace

TEST(Wedge, WorkedExample) {
  const Chart c = xyz();
  const DiffForm a = var(c, 0) * dx(c, 1);
  const DiffForm b = dx(c, 2) - var(c, 1) * dx(c, 0);
  const DiffForm expected = var(c, 0) * DiffForm::basis(c, {1, 2}) + var(c, 0) * var(c, 1) * DiffForm::basis(c, {0, 1});
  EXPECT_EQ(wedge(a, b), expected);
}

TEST(Wedge, BasisHandlesUnsortedAndRepeatedIndices) {
  const Chart c = xyz();
  EXPECT_EQ(DiffForm::basis(c, {1, 0}), -DiffForm::basis(c, {0, 1}));
  EXPECT_TRUE(DiffForm::basis(c, {1, 1}).is_zero());
  EXPECT_TRUE(wedge(dx(c, 0), dx(c, 0)).is_zero());
}

TEST(WedgePower, SymplecticSquare) {
  const Chart c = Chart::numbered("x", 4);
  const DiffForm w = DiffForm::basis(c, {0, 1}) + DiffForm::basis(c, {2, 3});
  EXPECT_EQ(wedge_power(w, 2), DiffForm::basis(c, {0, 1, 2, 3}, 2));
  EXPECT_THROW(wedge_power(dx(c, 0), 2), InputError);
  EXPECT_THROW(wedge_power(w, 0), InputError);
}

TEST(WedgePowerProperty, MatchesRepeatedWedge) {
  RationalSampler rng(401);
  for (int trial = 0; trial < 60; ++trial) {
    const Chart c = Chart::numbered("x", 4 + trial % 3);
    const DiffForm w = random_form(c, 2, rng, 5);
    for (std::size_t k = 1; 2 * k <= c.dim(); ++k) {
      DiffForm fold = w;
      for (std::size_t t = 1; t < k; ++t) fold = wedge(fold, w);
      ASSERT_EQ(wedge_power(w, k), fold);
    }
  }
}

TEST(ExteriorDerivative, WorkedExample) {
  const Chart c({"x", "y"});
  const auto x = var(c, 0);
  const auto y = var(c, 1);
  const DiffForm a = x * y * dx(c, 0) + x * x * dx(c, 1);
  EXPECT_EQ(exterior_derivative(a), x * DiffForm::basis(c, {0, 1}));
}

TEST(InteriorProduct, WorkedExample) {
  const Chart c({"x", "y"});
  const VectorField x = var(c, 1) * VectorField::coordinate(c, 0);
  EXPECT_EQ(interior_product(x, DiffForm::basis(c, {0, 1})), var(c, 1) * dx(c, 1));
  EXPECT_THROW(interior_product(x, DiffForm::scalar(var(c, 0))), InputError);
}

TEST(LieBracket, WorkedExamples) {
  const Chart c({"x", "y"});
  const VectorField a = var(c, 0) * VectorField::coordinate(c, 1);
  const VectorField b = var(c, 1) * VectorField::coordinate(c, 0);
  EXPECT_EQ(lie_bracket(a, b), var(c, 0) * VectorField::coordinate(c, 0) - var(c, 1) * VectorField::coordinate(c, 1));
}

TEST(LieBracket, StandardSignConvention) {
  // [d/dy, d/dx + y d/dz] = +d/dz with [X, Y] = XY - YX.
  const Chart c = xyz();
  const VectorField dy = VectorField::coordinate(c, 1);
  const VectorField x = VectorField::coordinate(c, 0) + var(c, 1) * VectorField::coordinate(c, 2);
  EXPECT_EQ(lie_bracket(dy, x), VectorField::coordinate(c, 2));
  EXPECT_EQ(lie_bracket(x, dy), -VectorField::coordinate(c, 2));
}

TEST(Forms, ToStringIsReadable) {
  const Chart c = xyz();
  EXPECT_EQ((var(c, 0) * DiffForm::basis(c, {1, 2})).to_string(), "x*d(y)^d(z)");
  EXPECT_EQ(DiffForm(c, 2).to_string(), "0*d(x)^d(y)");
  EXPECT_EQ((dx(c, 2) - var(c, 1) * dx(c, 0)).to_string(), "-y*d(x) + d(z)");
  EXPECT_EQ((VectorField::coordinate(c, 0) + var(c, 1) * VectorField::coordinate(c, 2)).to_string(), "@x + y*@z");
  EXPECT_EQ(VectorField(c).to_string(), "0*@x");
}

TEST(Forms, EvaluationAndIndependence) {
  const Chart c = xyz();
  const DiffForm a = dx(c, 2) - var(c, 1) * dx(c, 0);
  const Point pt{Scalar(0), Scalar(2), Scalar(0)};
  const ConstantForm v = evaluate_at_point(a, pt);
  EXPECT_EQ(v.terms.at(MultiIndex::single(0)), Scalar(-2));
  const std::vector<DiffForm> pair{a, dx(c, 0)};
  EXPECT_TRUE(independent_at_point(pair, pt));
  const std::vector<DiffForm> dependent{a, Scalar(2) * a};
  EXPECT_FALSE(independent_at_point(dependent, pt));
  EXPECT_TRUE(independent_at_point(std::span<const DiffForm>(), pt));
}

TEST(Forms, ConstantMinorCertificate) {
  const Chart c({"x1", "x2", "y1", "y2", "t"});
  const auto t = var(c, 4);
  const DiffForm a1 = dx(c, 2) - t * dx(c, 0);
  const DiffForm a2 = dx(c, 3) - t * dx(c, 1);
  const std::vector<DiffForm> first{wedge(wedge(a1, a2), exterior_derivative(a1))};
  const auto cert = constant_minor_certificate(first);
  ASSERT_TRUE(cert);
  EXPECT_EQ(*cert, (std::vector<MultiIndex>{MultiIndex::of({0, 2, 3, 4})}));
  const std::vector<DiffForm> second{wedge(wedge(a1, a2), exterior_derivative(a2))};
  EXPECT_EQ(*constant_minor_certificate(second), (std::vector<MultiIndex>{MultiIndex::of({1, 2, 3, 4})}));
}

// ---------------------------------------------------------------------------
// Oracle comparisons at random points.

TEST(FormsOracle, WedgeMatchesDenseProduct) {
  RationalSampler rng(402);
  for (int trial = 0; trial < 200; ++trial) {
    const Chart c = Chart::numbered("x", 2 + trial % 5);
    const std::size_t p = below(rng, c.dim());
    const std::size_t q = below(rng, c.dim() - p + 1);
    const DiffForm a = random_form(c, p, rng);
    const DiffForm b = random_form(c, q, rng);
    const Point pt = rng.point(c.dim());
    ASSERT_EQ(oracle::at(wedge(a, b), pt), oracle::wedge(oracle::at(a, pt), oracle::at(b, pt)));
  }
}

TEST(FormsOracle, DerivativeMatchesInterpolatedPartials) {
  RationalSampler rng(403);
  for (int trial = 0; trial < 200; ++trial) {
    const Chart c = Chart::numbered("x", 2 + trial % 5);
    const DiffForm a = random_form(c, below(rng, c.dim()), rng);
    const Point pt = rng.point(c.dim());
    ASSERT_EQ(oracle::at(exterior_derivative(a), pt), oracle::d_at(a, pt));
  }
}

TEST(FormsOracle, ContractionMatchesDenseContraction) {
  RationalSampler rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    const Chart c = Chart::numbered("x", 2 + trial % 5);
    const DiffForm a = random_form(c, 1 + below(rng, c.dim()), rng);
    const VectorField x = random_field(c, rng);
    const Point pt = rng.point(c.dim());
    ASSERT_EQ(oracle::at(interior_product(x, a), pt), oracle::iota(oracle::at(x, pt), oracle::at(a, pt)));
  }
}

TEST(FormsOracle, BracketMatchesInterpolatedPartials) {
  RationalSampler rng(405);
  for (int trial = 0; trial < 200; ++trial) {
    const Chart c = Chart::numbered("x", 1 + trial % 6);
    const VectorField x = random_field(c, rng);
    const VectorField y = random_field(c, rng);
    const Point pt = rng.point(c.dim());
    ASSERT_EQ(oracle::at(lie_bracket(x, y), pt), oracle::bracket_at(x, y, pt));
  }
}

// ---------------------------------------------------------------------------
// Exterior-calculus axioms, 300 seeded instances each on n <= 6, degree <= 3.

class ExteriorAxioms : public ::testing::Test {
 protected:
  RationalSampler rng{4242};
  Chart chart(int trial) const { return Chart::numbered("x", 1 + trial % 6); }
};

TEST_F(ExteriorAxioms, DSquaredVanishes) {
  for (int trial = 0; trial < 300; ++trial) {
    const Chart c = chart(trial);
    const std::size_t p = below(rng, std::min<std::size_t>(3, c.dim() - 1) + 1);
    const DiffForm a = random_form(c, p, rng);
    if (p + 2 > c.dim()) continue;
    ASSERT_TRUE(exterior_derivative(exterior_derivative(a)).is_zero()) << a.to_string();
  }
}

TEST_F(ExteriorAxioms, GradedAnticommutativity) {
  for (int trial = 0; trial < 300; ++trial) {
    const Chart c = chart(trial);
    const std::size_t p = below(rng, std::min<std::size_t>(3, c.dim()) + 1);
    const std::size_t q = below(rng, std::min<std::size_t>(3, c.dim() - p) + 1);
    const DiffForm a = random_form(c, p, rng);
    const DiffForm b = random_form(c, q, rng);
    ASSERT_EQ(wedge(a, b), Scalar(parity(p * q)) * wedge(b, a));
  }
}

TEST_F(ExteriorAxioms, LeibnizForD) {
  for (int trial = 0; trial < 300; ++trial) {
    const Chart c = chart(trial);
    if (c.dim() < 1) continue;
    const std::size_t p = below(rng, std::min<std::size_t>(3, c.dim() - 1) + 1);
    const std::size_t q = below(rng, std::min<std::size_t>(3, c.dim() - 1 - p) + 1);
    const DiffForm a = random_form(c, p, rng);
    const DiffForm b = random_form(c, q, rng);
    const DiffForm lhs = exterior_derivative(wedge(a, b));
    const DiffForm rhs = wedge(exterior_derivative(a), b) + Scalar(parity(p)) * wedge(a, exterior_derivative(b));
    ASSERT_EQ(lhs, rhs);
  }
}

TEST_F(ExteriorAxioms, LeibnizForContraction) {
  for (int trial = 0; trial < 300; ++trial) {
    const Chart c = Chart::numbered("x", 2 + trial % 5);
    const std::size_t p = 1 + below(rng, std::min<std::size_t>(3, c.dim() - 1));
    const std::size_t q = 1 + below(rng, std::min<std::size_t>(3, c.dim() - p));
    const DiffForm a = random_form(c, p, rng);
    const DiffForm b = random_form(c, q, rng);
    const VectorField x = random_field(c, rng);
    const DiffForm lhs = interior_product(x, wedge(a, b));
    const DiffForm rhs = wedge(interior_product(x, a), b) + Scalar(parity(p)) * wedge(a, interior_product(x, b));
    ASSERT_EQ(lhs, rhs);
  }
}

TEST_F(ExteriorAxioms, JacobiIdentity) {
  for (int trial = 0; trial < 300; ++trial) {
    const Chart c = chart(trial);
    const VectorField x = random_field(c, rng);
    const VectorField y = random_field(c, rng);
    const VectorField z = random_field(c, rng);
    const VectorField sum = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) +
                            lie_bracket(z, lie_bracket(x, y));
    ASSERT_TRUE(sum.is_zero());
  }
}

TEST_F(ExteriorAxioms, CartanFormulaForFunctionsAndOneForms) {
  // d a (X, Y) = X(a(Y)) - Y(a(X)) - a([X, Y]) for 1-forms.
  for (int trial = 0; trial < 100; ++trial) {
    const Chart c = Chart::numbered("x", 2 + trial % 4);
    const DiffForm a = random_form(c, 1, rng);
    const VectorField x = random_field(c, rng);
    const VectorField y = random_field(c, rng);
    const auto eval1 = [](const VectorField& v, const DiffForm& f) { return interior_product(v, f).coefficient({}); };
    const Polynomial lhs = interior_product(y, interior_product(x, exterior_derivative(a))).coefficient({});
    const Polynomial rhs = x.apply(eval1(y, a)) - y.apply(eval1(x, a)) - eval1(lie_bracket(x, y), a);
    ASSERT_EQ(lhs, rhs);
  }
}
