#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "keyregion/prob.hpp"
#include "oracles.hpp"

using namespace keyregion;

namespace {

JointPMF cube(const std::vector<double>& t) {
  const Alphabet b = Alphabet::binary();
  return JointPMF({{"A", b}, {"B", b}, {"C", b}}, t);
}

}  // namespace

TEST(Alphabet, RejectsDuplicatesAndEmpty) {
  EXPECT_THROW(Alphabet({}), std::invalid_argument);
  EXPECT_THROW(Alphabet({"a", "a"}), std::invalid_argument);
  EXPECT_EQ(Alphabet::range(3).index_of("2"), 2u);
  EXPECT_THROW(Alphabet::binary().index_of("7"), std::invalid_argument);
}

TEST(JointPMF, ValidatesTable) {
  const Alphabet b = Alphabet::binary();
  EXPECT_THROW(JointPMF({{"A", b}}, {0.5}), std::invalid_argument);
  EXPECT_THROW(JointPMF({{"A", b}}, {0.7, 0.7}), std::invalid_argument);
  EXPECT_THROW(JointPMF({{"A", b}}, {-0.1, 1.1}), std::invalid_argument);
  EXPECT_THROW(JointPMF({{"A", b}, {"A", b}}, {0.25, 0.25, 0.25, 0.25}), std::invalid_argument);
  EXPECT_NO_THROW(JointPMF({{"A", b}}, {0.3, 0.7}));
}

TEST(JointPMF, LastVariableFastest) {
  const JointPMF j = cube({0, 1, 0, 0, 0, 0, 0, 0});
  EXPECT_EQ(j.at({0, 0, 1}), 1.0);
  EXPECT_EQ(j.coord(1, 2), 1u);
  EXPECT_EQ(j.coord(4, 0), 1u);
}

TEST(Entropy, BinaryEntropyKnownValues) {
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.11), 0.49991595, 1e-8);
  EXPECT_THROW(binary_entropy(1.5), std::domain_error);
  EXPECT_THROW(binary_entropy(std::nan("")), std::domain_error);
}

TEST(Entropy, ConvolutionFold) {
  EXPECT_DOUBLE_EQ(binary_convolution(0.1, 0.2), 0.26);
  EXPECT_NEAR(binary_convolution({0.1, 0.2, 0.3}), oracle::conv(oracle::conv(0.1, 0.2), 0.3), 1e-15);
  EXPECT_DOUBLE_EQ(binary_convolution(0.5, 0.123), 0.5);
}

TEST(Entropy, MatchesDirectSums) {
  std::mt19937_64 g(7);
  for (int i = 0; i < 200; ++i) {
    const auto t = oracle::random_simplex(g, 8, i % 3 == 0 ? 0.3 : 0.0);
    const JointPMF j = cube(t);
    EXPECT_NEAR(entropy(j, {"A", "B", "C"}), oracle::entropy(t), 1e-12);
    EXPECT_NEAR(mutual_information(j, {"A"}, {"B"}), oracle::mi_ab({t}), 1e-12);
    EXPECT_NEAR(conditional_mutual_information(j, {"A"}, {"B"}, {"C"}), oracle::cmi_ab_c({t}), 1e-12);
  }
}

TEST(Entropy, ChainRuleAndSymmetry) {
  std::mt19937_64 g(11);
  for (int i = 0; i < 100; ++i) {
    const JointPMF j = cube(oracle::random_simplex(g, 8));
    const double lhs = entropy(j, {"A", "B", "C"});
    const double rhs = entropy(j, {"A"}) + conditional_entropy(j, {"B"}, {"A"}) + conditional_entropy(j, {"C"}, {"A", "B"});
    EXPECT_NEAR(lhs, rhs, 1e-12);
    EXPECT_NEAR(conditional_mutual_information(j, {"A"}, {"B"}, {"C"}),
                conditional_mutual_information(j, {"B"}, {"A"}, {"C"}), 1e-12);
    EXPECT_GE(conditional_mutual_information(j, {"A"}, {"B"}, {"C"}), 0.0);
  }
}

TEST(Entropy, OrderOfNamesIrrelevant) {
  std::mt19937_64 g(3);
  const JointPMF j = cube(oracle::random_simplex(g, 8));
  EXPECT_DOUBLE_EQ(entropy(j, {"C", "A"}), entropy(j, {"A", "C"}));
}

TEST(Entropy, RejectsBadSets) {
  const JointPMF j = cube(std::vector<double>(8, 0.125));
  EXPECT_THROW(entropy(j, {"Q"}), std::invalid_argument);
  EXPECT_THROW(entropy(j, {}), std::invalid_argument);
  EXPECT_THROW(conditional_mutual_information(j, {"A"}, {"A"}), std::invalid_argument);
  EXPECT_THROW(conditional_mutual_information(j, {"A"}, {"B"}, {"B"}), std::invalid_argument);
}

TEST(Entropy, UniformCubeIsThreeBits) {
  const JointPMF j = cube(std::vector<double>(8, 0.125));
  EXPECT_DOUBLE_EQ(entropy(j, {"A", "B", "C"}), 3.0);
  EXPECT_NEAR(mutual_information(j, {"A"}, {"B", "C"}), 0.0, 1e-15);
}

TEST(Marginalize, KeepsInputOrder) {
  std::mt19937_64 g(5);
  const auto t = oracle::random_simplex(g, 8);
  const JointPMF m = marginalize(cube(t), {"C", "A"});
  ASSERT_EQ(m.rank(), 2u);
  EXPECT_EQ(m.variables()[0].name, "A");
  EXPECT_EQ(m.variables()[1].name, "C");
  EXPECT_NEAR(m.at({1, 0}), t[4] + t[6], 1e-15);
}

TEST(Markov, DetectsChainsAndViolations) {
  // A uniform, B = A through BSC(0.1), C = B through BSC(0.2): A - B - C.
  std::vector<double> t(8);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) t[4 * a + 2 * b + c] = 0.5 * (a == b ? 0.9 : 0.1) * (b == c ? 0.8 : 0.2);
  const JointPMF j = cube(t);
  EXPECT_TRUE(is_markov_chain(j, {{"A"}, {"B"}, {"C"}}).holds);
  const MarkovCheck wrong = is_markov_chain(j, {{"A"}, {"C"}, {"B"}});
  EXPECT_FALSE(wrong.holds);
  EXPECT_GT(wrong.max_violation, 0.01);
  EXPECT_THROW(is_markov_chain(j, {{"A"}, {"B"}}), std::invalid_argument);
}
