// Sweeps the binary-sum design over (alpha, beta) and prints the R12/R23
// frontier next to the outer-bound corners.

#include <cstdio>

#include "keyregion/keyregion.hpp"

using namespace keyregion;

int main() {
  const double p1 = 0.4, p2 = 0.1, p3 = 0.25;
  const Gdmmac ch = build_binary_sum_gdmmac(p1, p2, p3);
  const DesignFamily family = [](std::span<const double> p) { return example2_design(p[0], p[1]); };
  const auto points = sweep(ch, family, {{"alpha", 0.0, 0.5, 0.05}, {"beta", 0.0, 0.5, 0.05}}, 1);

  std::vector<RateTriple> rates;
  for (const auto& p : points) rates.push_back(p.eval.bounds());
  std::printf("R12,R23\n");
  for (const Point2& q : pareto_project(rates, RateAxis::r12, RateAxis::r23)) std::printf("%.6f,%.6f\n", q.x, q.y);

  const RateTriple outer = example2_outer(p1, p2, p3);
  std::printf("# outer corners: R12 <= %.6f, R23 <= %.6f\n", outer.r12, outer.r23);
}
