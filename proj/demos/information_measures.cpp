// A binary symmetric channel as a joint PMF: entropies, mutual information
// and a Markov check on a cascade.

#include <cstdio>

#include "keyregion/prob.hpp"

using namespace keyregion;

int main() {
  const Alphabet bit = Alphabet::binary();
  const double p = 0.11, q = 0.2;
  std::vector<double> table(8);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t z = 0; z < 2; ++z) table[4 * x + 2 * y + z] = 0.5 * (x == y ? 1 - p : p) * (y == z ? 1 - q : q);
  const JointPMF joint({{"X", bit}, {"Y", bit}, {"Z", bit}}, table);

  std::printf("H(X,Y,Z)  = %.6f\n", entropy(joint, {"X", "Y", "Z"}));
  std::printf("I(X;Y)    = %.6f  (1 - h(p) = %.6f)\n", mutual_information(joint, {"X"}, {"Y"}), 1 - binary_entropy(p));
  std::printf("I(X;Z)    = %.6f  (1 - h(p*q) = %.6f)\n", mutual_information(joint, {"X"}, {"Z"}),
              1 - binary_entropy(binary_convolution(p, q)));
  std::printf("I(X;Z|Y)  = %.3g\n", conditional_mutual_information(joint, {"X"}, {"Z"}, {"Y"}));
  std::printf("X - Y - Z : %s\n", is_markov_chain(joint, {{"X"}, {"Y"}, {"Z"}}).holds ? "holds" : "fails");
}
