#include <gtest/gtest.h>

#include "keyregion/closed_form.hpp"
#include "oracles.hpp"

using namespace keyregion;
using oracle::conv;
using oracle::h;

TEST(Example1, CornerPoint) {
  const RateTriple c = example1_capacity(0.3, 0.5, 0.1);
  EXPECT_NEAR(c.r12, 0.2, 1e-15);
  EXPECT_EQ(c.r13, 0.0);
  EXPECT_NEAR(c.r23, 0.2, 1e-15);
  EXPECT_THROW(example1_capacity(0.6, 0.5, 0.1), std::domain_error);
  EXPECT_THROW(example1_capacity(-0.1, 0.5, 0.1), std::domain_error);
}

TEST(Example2, InnerMatchesReferenceValue) {
  const RateTriple r = example2_inner({0.2, 0.3, 0.4, 0.1, 0.25});
  EXPECT_NEAR(r.r12, 0.3391138521359496, 1e-12);
  EXPECT_EQ(r.r13, 0.0);
  EXPECT_NEAR(r.r23, 0.0057909175981700756, 1e-12);
}

TEST(Example2, InnerMatchesFormulaOnGrid) {
  for (double a = 0.0; a <= 0.5; a += 0.05)
    for (double b = 0.0; b <= 0.5; b += 0.05) {
      const double p1 = 0.09, p2 = 0.1, p3 = 0.07;
      const double r12 = h(conv(a, p2)) + h(conv(b, p3)) - h(conv(conv(a, b), p3)) - h(p2);
      const double r23 = h(conv(b, p1)) - h(conv(conv(b, a), p3));
      const RateTriple r = example2_inner({a, b, p1, p2, p3});
      EXPECT_NEAR(r.r12, std::max(r12, 0.0), 1e-12) << a << ',' << b;
      EXPECT_NEAR(r.r23, std::max(r23, 0.0), 1e-12) << a << ',' << b;
    }
}

TEST(Example2, CornersReachOuterBound) {
  const RateTriple outer = example2_outer(0.4, 0.1, 0.25);
  EXPECT_NEAR(outer.r12, 1.0 - h(0.1), 1e-15);
  EXPECT_NEAR(outer.r23, h(0.4) - h(0.25), 1e-15);
  EXPECT_NEAR(example2_inner({0.5, 0.5, 0.4, 0.1, 0.25}).r12, outer.r12, 1e-12);
  EXPECT_NEAR(example2_inner({0.0, 0.0, 0.4, 0.1, 0.25}).r23, outer.r23, 1e-12);
}

TEST(Example2, ValidatesParameters) {
  EXPECT_THROW(example2_inner({0.6, 0.1, 0.4, 0.1, 0.25}), std::domain_error);
  EXPECT_THROW(example2_outer(0.09, 0.1, 0.07), std::domain_error);
  EXPECT_TRUE((Example2Params{0, 0, 0.4, 0.1, 0.25}.ordered()));
  EXPECT_FALSE((Example2Params{0, 0, 0.09, 0.1, 0.07}.ordered()));
}

TEST(Example3, FunctionMatchesEnumeration) {
  EXPECT_NEAR(example3_f(0.1, 0.2, 0.3), 1.7439289480847686, 1e-12);
  for (double a : {0.0, 0.05, 0.3, 0.5})
    for (double b : {0.0, 0.11, 0.5})
      for (double c : {0.02, 0.25, 0.5}) EXPECT_NEAR(example3_f(a, b, c), oracle::xor_pair_entropy(a, b, c), 1e-12);
}

TEST(Example3, OuterReferenceValue) {
  const RateTriple o = example3_outer(0.09, 0.1, 0.07);
  EXPECT_NEAR(o.r12, 0.5310044064107188, 1e-12);
  EXPECT_NEAR(o.r13, 0.16682555757148093, 1e-12);
  EXPECT_NEAR(o.r23, 0.23737172373536047, 1e-12);
  EXPECT_NEAR(o.r13, h(conv(0.09, 0.07)) - h(0.09), 1e-15);
}

TEST(Example3, PregenReferenceValue) {
  const RateTriple r = example3_pregen(0.5, 0.0, 0.0, 0.09, 0.1, 0.07);
  EXPECT_NEAR(r.r12, 0.15565822966143095, 1e-12);
  EXPECT_EQ(r.r13, 0.0);
  EXPECT_EQ(r.r23, 0.0);
}

TEST(Example3, InnerReducesToPregenWhenSecondaryIsUseless) {
  for (double a : {0.0, 0.2, 0.5})
    for (double b : {0.0, 0.1, 0.35}) {
      const Example3Inner g = example3_inner({a, 0.0, 0.5, b, 0.5, 0.09, 0.1, 0.07});
      const RateTriple p = example3_pregen(a, 0.0, b, 0.09, 0.1, 0.07);
      EXPECT_NEAR(g.bounds.r12, p.r12, 1e-12);
      EXPECT_NEAR(g.bounds.r13, 0.0, 1e-12);
      EXPECT_NEAR(g.bounds.r23, p.r23, 1e-12);
    }
}

TEST(Example3, ValidatesParameters) {
  EXPECT_THROW(example3_outer(0.0, 0.1, 0.1), std::domain_error);
  EXPECT_THROW(example3_inner({0.7, 0, 0, 0, 0, 0.1, 0.1, 0.1}), std::domain_error);
  EXPECT_THROW(example3_f(1.2, 0.1, 0.1), std::domain_error);
}
