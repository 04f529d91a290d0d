#include <gtest/gtest.h>

#include <set>

#include "nonholonomy/sampling.hpp"

using namespace nonholonomy;

TEST(RationalSampler, StaysInTheDocumentedRange) {
  RationalSampler rng(5);
  std::set<std::string> seen;
  for (int i = 0; i < 5000; ++i) {
    const Scalar s = rng.next();
    const Scalar scaled = s * 6;
    ASSERT_EQ(scaled.get_den(), 1) << s;  // denominators divide 1, 2 or 3
    ASSERT_LE(abs(s), 9);
    seen.insert(s.get_str());
  }
  EXPECT_TRUE(seen.count("-9") && seen.count("9") && seen.count("1/3") && seen.count("-1/2"));
}

TEST(RationalSampler, NonzeroDrawsAreNonzero) {
  RationalSampler rng(6);
  for (int i = 0; i < 1000; ++i) ASSERT_NE(rng.next_nonzero(), 0);
}

TEST(RationalSampler, SeedsReplay) {
  RationalSampler a(77);
  RationalSampler b(77);
  RationalSampler c(78);
  EXPECT_EQ(a.point(10), b.point(10));
  EXPECT_NE(a.point(10), c.point(10));
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_EQ(derive_seed(3, 4), derive_seed(3, 4));
}

TEST(DefaultSamples, FullGridInLowDimension) {
  const auto pts = default_samples(2, SampleOptions{1, 0, 125});
  ASSERT_EQ(pts.size(), 25U);
  EXPECT_EQ(pts.front(), (Point{Scalar(0), Scalar(0)}));
  std::set<Point> unique(pts.begin(), pts.end());
  EXPECT_EQ(unique.size(), 25U);
}

TEST(DefaultSamples, CappedGridPlusRandomPoints) {
  const auto pts = default_samples(7);
  ASSERT_EQ(pts.size(), 225U);
  for (const auto& p : pts) ASSERT_EQ(p.size(), 7U);
  EXPECT_EQ(default_samples(7), pts);
  const auto other = default_samples(7, SampleOptions{2, 100, 125});
  EXPECT_EQ(std::vector<Point>(other.begin(), other.begin() + 125), std::vector<Point>(pts.begin(), pts.begin() + 125));
  EXPECT_NE(other, pts);
}
