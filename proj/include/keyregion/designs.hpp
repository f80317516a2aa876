#pragma once

// Auxiliary-variable designs used by the worked binary examples.

#include "keyregion/channel.hpp"

namespace keyregion {

/// S12 = X1 and S23 = X2, both uniform on {-1,+1}; S13 and S21 absent.
/// Pairs with build_erasure_gdmmac.
inline AuxDesign example1_design() {
  const Alphabet pm = detail::antipodal();
  const Distribution one = Distribution::singleton();
  return AuxDesign{
      Distribution::uniform(pm),
      one,
      one,
      Distribution::uniform(pm),
      Kernel::deterministic({2, 1}, pm, [](std::span<const std::size_t> c) { return c[0]; }),
      Kernel::deterministic({1, 2}, pm, [](std::span<const std::size_t> c) { return c[1]; }),
      std::nullopt,
  };
}

/// S12 = X1 ~ Bernoulli(alpha); S23 uniform and X2 = S23 + N, N ~ Bernoulli(beta)
/// (S23 -> X2 through a BSC, X2 uniform); S13, S21 absent.
inline AuxDesign example2_design(double alpha, double beta) {
  detail::checked_probability(alpha, "example2_design");
  detail::checked_probability(beta, "example2_design");
  const Alphabet bin = Alphabet::binary();
  const Distribution one = Distribution::singleton();
  return AuxDesign{
      Distribution::bernoulli(alpha),
      one,
      one,
      Distribution::uniform(bin),
      Kernel::deterministic({2, 1}, bin, [](std::span<const std::size_t> c) { return c[0]; }),
      Kernel::tabulate({1, 2}, bin,
                       [beta](std::span<const std::size_t> c, std::size_t x2) { return detail::bern(beta, x2 ^ c[1]); }),
      std::nullopt,
  };
}

/// Two-layer design for the correlated-noise channel:
///   X1 = S12 + S13,  S12 ~ Ber(alpha),  S13 ~ Ber(alpha_p)
///   S23 uniform, X2 = S23 + Ber(beta), S21 absent
///   T13 = Y1 + Ber(alpha_pp), T23 = Y2 + Ber(beta_p), T12 and T21 absent.
inline AuxDesign example3_design(double alpha, double alpha_p, double alpha_pp, double beta, double beta_p) {
  for (double p : {alpha, alpha_p, alpha_pp, beta, beta_p}) detail::checked_probability(p, "example3_design");
  const Alphabet bin = Alphabet::binary();
  const Distribution one = Distribution::singleton();
  auto noisy_copy_of_output = [&bin](double q) {
    return Kernel::tabulate({2, 2, 2}, bin,
                            [q](std::span<const std::size_t> c, std::size_t t) { return detail::bern(q, t ^ c[1]); });
  };
  return AuxDesign{
      Distribution::bernoulli(alpha),
      Distribution::bernoulli(alpha_p),
      one,
      Distribution::uniform(bin),
      Kernel::deterministic({2, 2}, bin, [](std::span<const std::size_t> c) { return c[0] ^ c[1]; }),
      Kernel::tabulate({1, 2}, bin,
                       [beta](std::span<const std::size_t> c, std::size_t x2) { return detail::bern(beta, x2 ^ c[1]); }),
      TLayer{
          Kernel::constant({2, 2, 2}, one),
          noisy_copy_of_output(alpha_pp),
          Kernel::constant({2, 2, 1}, one),
          noisy_copy_of_output(beta_p),
      },
  };
}

}  // namespace keyregion
