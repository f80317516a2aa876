#include <gtest/gtest.h>

#include "keyregion/designs.hpp"
#include "keyregion/regions.hpp"
#include "oracles.hpp"

using namespace keyregion;
using namespace keyregion::names;

namespace {

double row_sum_error(const Gdmmac& ch) {
  double worst = 0.0;
  for (std::size_t a = 0; a < ch.x1().size(); ++a)
    for (std::size_t b = 0; b < ch.x2().size(); ++b) {
      double s = 0.0;
      for (double p : ch.outputs(a, b)) s += p;
      worst = std::max(worst, std::abs(s - 1.0));
    }
  return worst;
}

}  // namespace

TEST(Kernel, RowsMustBeStochastic) {
  const Alphabet b = Alphabet::binary();
  EXPECT_THROW(Kernel({2}, b, {0.5, 0.5, 0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(Kernel({2}, b, {0.5, 0.5}), std::invalid_argument);
  const Kernel k({2}, b, {0.9, 0.1, 0.2, 0.8});
  EXPECT_EQ(k({1}, 1), 0.8);
}

TEST(Gdmmac, BuildersAreStochastic) {
  EXPECT_LT(row_sum_error(build_erasure_gdmmac(0.3, 0.3, 0.5, 0.1)), 1e-12);
  EXPECT_LT(row_sum_error(build_degraded_erasure_gdmmac(0.3, 0.3, 0.5, 0.1)), 1e-12);
  EXPECT_LT(row_sum_error(build_binary_sum_gdmmac(0.09, 0.1, 0.07)), 1e-12);
  EXPECT_LT(row_sum_error(build_degraded_binary_sum_gdmmac(0.4, 0.1, 0.25)), 1e-12);
  EXPECT_LT(row_sum_error(build_correlated_noise_gdmmac(0.09, 0.1, 0.07)), 1e-12);
}

TEST(Gdmmac, BuildersValidateParameters) {
  EXPECT_THROW(build_erasure_gdmmac(1.2, 0.3, 0.5, 0.1), std::domain_error);
  EXPECT_THROW(build_binary_sum_gdmmac(0.6, 0.1, 0.1), std::domain_error);
  EXPECT_THROW(build_correlated_noise_gdmmac(0.0, 0.1, 0.1), std::domain_error);
  EXPECT_THROW(build_degraded_binary_sum_gdmmac(0.09, 0.1, 0.07), std::domain_error);
  EXPECT_THROW(build_degraded_erasure_gdmmac(0.3, 0.3, 0.1, 0.1), std::domain_error);
}

TEST(Gdmmac, ErasureMarginals) {
  const Gdmmac ch = build_erasure_gdmmac(0.3, 0.2, 0.5, 0.1);
  // Y2 erases X1 with p12, Y1 erases X2 with p21; Y3 sees both.
  EXPECT_NEAR(ch.y2_given(0, 1, 1), 0.3, 1e-15);
  EXPECT_NEAR(ch.y2_given(0, 1, 0), 0.7, 1e-15);
  EXPECT_NEAR(ch.y1_given(0, 1, 1), 0.2, 1e-15);
  EXPECT_NEAR(ch.y1_given(0, 1, 2), 0.8, 1e-15);
}

TEST(Gdmmac, DegradedCouplingsKeepMarginals) {
  const auto same = [](const Gdmmac& a, const Gdmmac& b) {
    double worst = 0.0;
    for (std::size_t x1 = 0; x1 < a.x1().size(); ++x1)
      for (std::size_t x2 = 0; x2 < a.x2().size(); ++x2) {
        for (std::size_t y = 0; y < a.y1().size(); ++y)
          worst = std::max(worst, std::abs(a.y1_given(x1, x2, y) - b.y1_given(x1, x2, y)));
        for (std::size_t y = 0; y < a.y2().size(); ++y)
          worst = std::max(worst, std::abs(a.y2_given(x1, x2, y) - b.y2_given(x1, x2, y)));
        for (std::size_t y = 0; y < a.y3().size(); ++y)
          worst = std::max(worst, std::abs(a.y3_given(x1, x2, y) - b.y3_given(x1, x2, y)));
      }
    return worst;
  };
  EXPECT_LT(same(build_binary_sum_gdmmac(0.4, 0.1, 0.25), build_degraded_binary_sum_gdmmac(0.4, 0.1, 0.25)), 1e-12);
  EXPECT_LT(same(build_erasure_gdmmac(0.3, 0.3, 0.5, 0.1), build_degraded_erasure_gdmmac(0.3, 0.3, 0.5, 0.1)), 1e-12);
}

TEST(Gdmmac, DegradedBinarySumIsPhysicallyDegraded) {
  const Gdmmac ch = build_degraded_binary_sum_gdmmac(0.4, 0.1, 0.25);
  const JointPMF j = induce_joint(ch, example2_design(0.2, 0.3));
  EXPECT_TRUE(is_markov_chain(j, {{X1, X2}, {Y2}, {Y3}, {Y1}}).holds);
}

TEST(Gdmmac, CorrelatedNoiseEntropy) {
  // H(Y2, Y3 | X) = H(Z2) + H(Z3); H(Y1 | X) = h(p1*p2*p3).
  const double p1 = 0.09, p2 = 0.1, p3 = 0.07;
  const Gdmmac ch = build_correlated_noise_gdmmac(p1, p2, p3);
  const JointPMF j = induce_joint(ch, example3_design(0.1, 0.2, 0.3, 0.4, 0.1));
  EXPECT_NEAR(conditional_entropy(j, {Y2, Y3}, {X1, X2}), oracle::h(p2) + oracle::h(p3), 1e-12);
  EXPECT_NEAR(conditional_entropy(j, {Y1}, {X1, X2}), oracle::h(oracle::conv(oracle::conv(p1, p2), p3)), 1e-12);
}

TEST(Design, CompatibilityChecked) {
  const Gdmmac erasure = build_erasure_gdmmac(0.3, 0.3, 0.5, 0.1);
  EXPECT_NO_THROW(induce_joint(erasure, example1_design()));
  AuxDesign bad = example1_design();
  bad.x1 = Kernel::constant({3, 1}, Distribution::uniform(Alphabet::binary()));
  EXPECT_THROW(induce_joint(erasure, bad), std::invalid_argument);
}

TEST(Design, InducedJointHasExpectedLayout) {
  const JointPMF j = induce_joint(build_correlated_noise_gdmmac(0.09, 0.1, 0.07), example3_design(0.1, 0.2, 0.3, 0.4, 0.1));
  const std::vector<std::string> expected = {S12, S13, S21, S23, X1, X2, Y1, Y2, Y3, T12, T13, T21, T23};
  ASSERT_EQ(j.rank(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(j.variables()[i].name, expected[i]);
  EXPECT_NEAR(entropy(j, {S12}), oracle::h(0.1), 1e-12);
  EXPECT_NEAR(conditional_entropy(j, {X1}, {S12, S13}), 0.0, 1e-12);
}

TEST(Design, AuxiliariesIndependent) {
  const JointPMF j = induce_joint(build_binary_sum_gdmmac(0.4, 0.1, 0.25), example2_design(0.2, 0.3));
  EXPECT_NEAR(mutual_information(j, {S12}, {S23}), 0.0, 1e-12);
}

TEST(MarginalInvariance, AtomsDependOnlyOnOutputMarginals) {
  const auto cmp = [](const Gdmmac& ch, const AuxDesign& d) {
    const PreGenAtoms a = pregen_atoms(induce_joint(ch, d));
    const PreGenAtoms b = pregen_atoms(induce_joint(marginal_product_channel(ch), d));
    EXPECT_NEAR(a.r12, b.r12, 1e-12);
    EXPECT_NEAR(a.r21, b.r21, 1e-12);
    EXPECT_NEAR(a.r13, b.r13, 1e-12);
    EXPECT_NEAR(a.r23, b.r23, 1e-12);
    EXPECT_NEAR(a.i12, b.i12, 1e-12);
    EXPECT_NEAR(a.i3, b.i3, 1e-12);
  };
  cmp(build_erasure_gdmmac(0.3, 0.3, 0.5, 0.1), example1_design());
  cmp(build_degraded_binary_sum_gdmmac(0.4, 0.1, 0.25), example2_design(0.2, 0.3));
  cmp(build_binary_sum_gdmmac(0.09, 0.1, 0.07), example2_design(0.35, 0.05));
}

TEST(AttachChannel, AppendsOutputs) {
  const Alphabet b = Alphabet::binary();
  const JointPMF in({{U, b}, {X1, b}, {X2, b}}, std::vector<double>(8, 0.125));
  const JointPMF j = attach_channel(build_binary_sum_gdmmac(0.1, 0.2, 0.3), in);
  EXPECT_EQ(j.rank(), 6u);
  EXPECT_TRUE(is_markov_chain(j, {{U}, {X1, X2}, {Y1, Y2, Y3}}).holds);
  EXPECT_THROW(attach_channel(build_binary_sum_gdmmac(0.1, 0.2, 0.3), j), std::invalid_argument);
}
