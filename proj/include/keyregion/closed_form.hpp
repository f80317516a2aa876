#pragma once

// Closed-form rate regions of the erasure, binary-sum and correlated-noise
// examples. These are scalar formulas, independent of the joint-PMF pipeline,
// and serve as its oracles.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "keyregion/prob.hpp"
#include "keyregion/regions.hpp"

namespace keyregion {

namespace detail {

inline void require_range(double v, double lo, double hi, bool open_lo, const char* what) {
  const bool ok = open_lo ? (v > lo && v <= hi) : (v >= lo && v <= hi);
  if (!ok || std::isnan(v)) {
    throw std::domain_error(std::string(what) + " = " + std::to_string(v) + " outside " + (open_lo ? "(" : "[") +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

}  // namespace detail

/// Binary-sum example parameters: design (alpha, beta) and crossovers.
struct Example2Params {
  double alpha = 0.0;
  double beta = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;

  void validate() const {
    detail::require_range(alpha, 0.0, 0.5, false, "alpha");
    detail::require_range(beta, 0.0, 0.5, false, "beta");
    detail::require_range(p1, 0.0, 0.5, false, "p1");
    detail::require_range(p2, 0.0, 0.5, false, "p2");
    detail::require_range(p3, 0.0, 0.5, false, "p3");
  }

  /// The regime 0 <= p2 <= p3 <= p1 <= 0.5 in which the outer bound is derived.
  bool ordered() const { return p2 <= p3 && p3 <= p1; }
};

/// Correlated-noise example parameters: (alpha, alpha', alpha'', beta, beta')
/// and crossovers.
struct Example3Params {
  double alpha = 0.0;
  double alpha_p = 0.0;
  double alpha_pp = 0.0;
  double beta = 0.0;
  double beta_p = 0.0;
  double p1 = 0.1;
  double p2 = 0.1;
  double p3 = 0.1;

  void validate() const {
    detail::require_range(alpha, 0.0, 0.5, false, "alpha");
    detail::require_range(alpha_p, 0.0, 0.5, false, "alpha'");
    detail::require_range(alpha_pp, 0.0, 0.5, false, "alpha''");
    detail::require_range(beta, 0.0, 0.5, false, "beta");
    detail::require_range(beta_p, 0.0, 0.5, false, "beta'");
    detail::require_range(p1, 0.0, 0.5, true, "p1");
    detail::require_range(p2, 0.0, 0.5, true, "p2");
    detail::require_range(p3, 0.0, 0.5, true, "p3");
  }
};

/// Capacity corner of the erasure example, (p13 - p12, 0, p12 - p23).
inline RateTriple example1_capacity(double p12, double p13, double p23) {
  for (double p : {p12, p13, p23}) detail::require_range(p, 0.0, 1.0, false, "erasure probability");
  if (!(p13 >= p12 && p12 >= p23)) throw std::domain_error("example1_capacity requires p13 >= p12 >= p23");
  return {p13 - p12, 0.0, p12 - p23};
}

inline RateTriple example2_inner(const Example2Params& q) {
  q.validate();
  const auto h = binary_entropy;
  const double r12 = h(binary_convolution(q.alpha, q.p2)) + h(binary_convolution(q.beta, q.p3)) -
                     h(binary_convolution({q.alpha, q.beta, q.p3})) - h(q.p2);
  const double r23 = h(binary_convolution(q.beta, q.p1)) - h(binary_convolution({q.beta, q.alpha, q.p3}));
  return {detail::positive_part(r12), 0.0, detail::positive_part(r23)};
}

inline RateTriple example2_outer(double p1, double p2, double p3) {
  Example2Params{0.0, 0.0, p1, p2, p3}.validate();
  if (!(p2 <= p3 && p3 <= p1)) throw std::domain_error("example2_outer requires p2 <= p3 <= p1");
  return {1.0 - binary_entropy(p2), 0.0, binary_entropy(p1) - binary_entropy(p3)};
}

/// Entropy of (A+B, A+C) for independent A ~ Ber(a), B ~ Ber(b), C ~ Ber(c),
/// written as the four pairwise masses.
inline double example3_f(double a, double b, double c) {
  a = detail::checked_probability(a, "example3_f");
  b = detail::checked_probability(b, "example3_f");
  c = detail::checked_probability(c, "example3_f");
  const double na = 1.0 - a, nb = 1.0 - b, nc = 1.0 - c;
  const std::array<double, 4> masses = {
      a * b * c + na * nb * nc,
      a * nb * c + na * b * nc,
      a * b * nc + na * nb * c,
      a * nb * nc + na * b * c,
  };
  double f = 0.0;
  for (double m : masses) f -= detail::plogp(m);
  return f;
}

struct Example3Inner {
  RateTriple bounds;
  bool feasible = true;
  /// RHS - LHS of the two transmissibility conditions.
  std::array<double, 2> constraint_slacks{};
};

inline Example3Inner example3_inner(const Example3Params& q) {
  q.validate();
  const auto h = binary_entropy;
  const auto pos = detail::positive_part;
  const double hx = example3_f(binary_convolution(q.beta, q.p2), q.p3, q.beta_p);
  const double hy = example3_f(binary_convolution({q.alpha, q.beta, q.p2}), q.p3, q.beta_p);
  const double hz = example3_f(binary_convolution(q.beta, q.p2), binary_convolution(q.p1, q.p3), q.beta_p);

  const double h_ab23 = h(binary_convolution({q.alpha, q.beta, q.p2, q.p3}));
  const double h_b123 = h(binary_convolution({q.beta, q.p1, q.p2, q.p3}));

  Example3Inner out;
  out.bounds.r12 = pos(hx - hy - h(binary_convolution(q.alpha_p, q.p2)) + h(binary_convolution({q.alpha, q.alpha_p, q.p2})));
  out.bounds.r13 = h(binary_convolution({q.p1, q.p3, q.alpha_pp})) - h(binary_convolution(q.p1, q.alpha_pp));
  out.bounds.r23 = pos(h_b123 - h_ab23) + pos(hz - hy + h_ab23 - h_b123);

  const double secondary_cost = h(binary_convolution(q.alpha_pp, q.p1)) - h(q.alpha_pp);
  out.constraint_slacks = {
      h(binary_convolution({q.alpha, q.alpha_p, q.beta, q.p2, q.p3})) - h_ab23 - secondary_cost,
      1.0 - (secondary_cost + hy - h(q.beta_p)),
  };
  out.feasible = out.constraint_slacks[0] >= -kFeasibilityTolerance && out.constraint_slacks[1] >= -kFeasibilityTolerance;
  return out;
}

/// Pre-generated keys specialization of the correlated-noise example.
inline RateTriple example3_pregen(double alpha, double alpha_p, double beta, double p1, double p2, double p3) {
  Example3Params{alpha, alpha_p, 0.5, beta, 0.5, p1, p2, p3}.validate();
  const auto h = binary_entropy;
  const auto pos = detail::positive_part;
  const double h_ab23 = h(binary_convolution({alpha, beta, p2, p3}));
  const double r12 = h(binary_convolution({beta, p2, p3})) - h_ab23 - h(binary_convolution(alpha_p, p2)) +
                     h(binary_convolution({alpha, alpha_p, p2}));
  const double r23 = h(binary_convolution({beta, p1, p2, p3})) - h_ab23;
  return {pos(r12), 0.0, pos(r23)};
}

inline RateTriple example3_outer(double p1, double p2, double p3) {
  Example3Params{0, 0, 0, 0, 0, p1, p2, p3}.validate();
  const auto h = binary_entropy;
  const double h13 = h(binary_convolution(p1, p3));
  return {1.0 - h(p2), h13 - h(p1), h13 - h(p3)};
}

}  // namespace keyregion
