#pragma once

// Invariant self-checks across modules. Each check reports the largest
// observed deviation next to the tolerance it is held to.

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "keyregion/channel.hpp"
#include "keyregion/closed_form.hpp"
#include "keyregion/csv.hpp"
#include "keyregion/designs.hpp"
#include "keyregion/prob.hpp"
#include "keyregion/regions.hpp"

namespace keyregion {

struct CheckResult {
  std::string name;
  double observed = 0.0;
  double tolerance = 0.0;
  std::string detail;

  bool passed() const { return observed <= tolerance; }
};

struct CheckOptions {
  /// Added to the closed-form R12 values; nonzero only for mutation tests.
  double closed_form_perturbation = 0.0;
  /// Grid step for the Example 3 oracle (5-D grid, so keep it coarse).
  double example3_step = 0.25;
};

namespace check_detail {

inline double max_abs_diff(const RateTriple& a, const RateTriple& b) {
  return std::max({std::abs(a.r12 - b.r12), std::abs(a.r13 - b.r13), std::abs(a.r23 - b.r23)});
}

inline std::vector<double> grid(double step) { return GridAxis{"", 0.0, 0.5, step}.values(); }

struct Triple {
  double p1, p2, p3;
};

inline const std::vector<Triple>& example2_sets() {
  static const std::vector<Triple> sets = {{0.09, 0.1, 0.07}, {0.2, 0.05, 0.1}, {0.4, 0.1, 0.25}};
  return sets;
}

inline const std::vector<Triple>& example3_sets() {
  static const std::vector<Triple> sets = {{0.09, 0.1, 0.07}, {0.01, 0.02, 0.01}, {0.03, 0.05, 0.02}};
  return sets;
}

inline CheckResult example2_oracle(const CheckOptions& o) {
  CheckResult r{"example2 generic vs closed form", 0.0, 1e-9, ""};
  for (const auto& s : example2_sets()) {
    const Gdmmac ch = build_binary_sum_gdmmac(s.p1, s.p2, s.p3);
    for (double a : grid(0.05))
      for (double b : grid(0.05)) {
        const RateTriple generic = evaluate_design(ch, example2_design(a, b)).bounds();
        RateTriple closed = example2_inner({a, b, s.p1, s.p2, s.p3});
        closed.r12 += o.closed_form_perturbation;
        r.observed = std::max(r.observed, max_abs_diff(generic, closed));
      }
  }
  return r;
}

inline CheckResult example3_oracle(const CheckOptions& o) {
  CheckResult r{"example3 generic vs closed form", 0.0, 1e-9, ""};
  std::size_t flag_mismatches = 0;
  const auto g = grid(o.example3_step);
  const auto& s = example3_sets().front();
  const Gdmmac ch = build_correlated_noise_gdmmac(s.p1, s.p2, s.p3);
  for (double a : g)
    for (double ap : g)
      for (double app : g)
        for (double b : g)
          for (double bp : g) {
            const RegionEvaluation e = evaluate_design(ch, example3_design(a, ap, app, b, bp));
            Example3Inner c = example3_inner({a, ap, app, b, bp, s.p1, s.p2, s.p3});
            c.bounds.r12 += o.closed_form_perturbation;
            r.observed = std::max(r.observed, max_abs_diff(e.bounds(), c.bounds));
            flag_mismatches += e.feasible != c.feasible ? 1 : 0;
          }
  if (flag_mismatches) {
    r.observed = std::max(r.observed, 1.0);
    r.detail = std::to_string(flag_mismatches) + " feasibility flag mismatches";
  }
  return r;
}

inline CheckResult reduction_identity(const CheckOptions& o) {
  CheckResult r{"example3 reduces to pre-generated keys", 0.0, 1e-12, ""};
  for (const auto& s : example3_sets()) {
    const Gdmmac ch = build_correlated_noise_gdmmac(s.p1, s.p2, s.p3);
    for (double a : grid(0.05))
      for (double b : grid(0.05)) {
        const RateTriple generic = evaluate_design(ch, example3_design(a, 0.0, 0.5, b, 0.5)).bounds();
        RateTriple closed = example3_pregen(a, 0.0, b, s.p1, s.p2, s.p3);
        closed.r12 += o.closed_form_perturbation;
        r.observed = std::max(r.observed, max_abs_diff(generic, closed));
      }
  }
  return r;
}

inline CheckResult inner_within_outer(const CheckOptions&) {
  CheckResult r{"inner region within outer bound", 0.0, 1e-9, ""};
  auto excess = [&](const RateTriple& in, const RateTriple& out) {
    r.observed = std::max({r.observed, in.r12 - out.r12, in.r13 - out.r13, in.r23 - out.r23});
  };
  for (const auto& s : example2_sets()) {
    const Example2Params q{0, 0, s.p1, s.p2, s.p3};
    if (!q.ordered()) continue;
    const RateTriple outer = example2_outer(s.p1, s.p2, s.p3);
    const Gdmmac ch = build_binary_sum_gdmmac(s.p1, s.p2, s.p3);
    for (double a : grid(0.05))
      for (double b : grid(0.05)) excess(evaluate_design(ch, example2_design(a, b)).bounds(), outer);
    r.observed = std::max(r.observed, max_abs_diff(example2_inner({0.5, 0.5, s.p1, s.p2, s.p3}), {outer.r12, 0.0, 0.0}));
    r.observed = std::max(r.observed, max_abs_diff(example2_inner({0.0, 0.0, s.p1, s.p2, s.p3}), {0.0, 0.0, outer.r23}));
  }
  for (const auto& s : example3_sets()) {
    const RateTriple outer = example3_outer(s.p1, s.p2, s.p3);
    for (double a : grid(0.25))
      for (double ap : grid(0.25))
        for (double app : grid(0.25))
          for (double b : grid(0.25))
            for (double bp : grid(0.25)) {
              const Example3Inner c = example3_inner({a, ap, app, b, bp, s.p1, s.p2, s.p3});
              if (c.feasible) excess(c.bounds, outer);
            }
  }
  return r;
}

inline CheckResult example1_corner(const CheckOptions& o) {
  CheckResult r{"example1 corner from generic evaluator", 0.0, 1e-9, ""};
  const RateTriple generic = evaluate_design(build_erasure_gdmmac(0.3, 0.3, 0.5, 0.1), example1_design()).bounds();
  RateTriple closed = example1_capacity(0.3, 0.5, 0.1);
  closed.r12 += o.closed_form_perturbation;
  r.observed = max_abs_diff(generic, closed);
  return r;
}

inline CheckResult marginal_invariance(const CheckOptions&) {
  CheckResult r{"atoms invariant under marginal-product channel", 0.0, 1e-12, ""};
  auto compare = [&](const Gdmmac& ch, const AuxDesign& d) {
    const PreGenAtoms a = pregen_atoms(induce_joint(ch, d));
    const PreGenAtoms b = pregen_atoms(induce_joint(marginal_product_channel(ch), d));
    r.observed = std::max({r.observed, std::abs(a.r12 - b.r12), std::abs(a.r21 - b.r21), std::abs(a.i12 - b.i12),
                           std::abs(a.r13 - b.r13), std::abs(a.r23 - b.r23), std::abs(a.i3 - b.i3)});
  };
  compare(build_erasure_gdmmac(0.3, 0.3, 0.5, 0.1), example1_design());
  compare(build_degraded_erasure_gdmmac(0.3, 0.3, 0.5, 0.1), example1_design());
  compare(build_binary_sum_gdmmac(0.4, 0.1, 0.25), example2_design(0.2, 0.3));
  compare(build_degraded_binary_sum_gdmmac(0.4, 0.1, 0.25), example2_design(0.2, 0.3));
  return r;
}

inline CheckResult markov_structure(const CheckOptions&) {
  CheckResult r{"auxiliaries - inputs - outputs Markov chain", 0.0, 1e-9, ""};
  const VarSet aux = {names::S12, names::S13, names::S21, names::S23};
  const VarSet in = {names::X1, names::X2};
  const VarSet out = {names::Y1, names::Y2, names::Y3};
  for (const auto& [ch, d] : std::vector<std::pair<Gdmmac, AuxDesign>>{
           {build_erasure_gdmmac(0.3, 0.3, 0.5, 0.1), example1_design()},
           {build_binary_sum_gdmmac(0.4, 0.1, 0.25), example2_design(0.2, 0.3)},
           {build_correlated_noise_gdmmac(0.09, 0.1, 0.07), example3_design(0.1, 0.2, 0.3, 0.4, 0.1)}}) {
    r.observed = std::max(r.observed, is_markov_chain(induce_joint(ch, d), {aux, in, out}).max_violation);
  }
  // Negative control: independent inputs become dependent given their sum.
  const JointPMF j = induce_joint(build_binary_sum_gdmmac(0.4, 0.1, 0.25), example2_design(0.2, 0.3));
  const MarkovCheck broken = is_markov_chain(j, {{names::X1}, {names::Y3}, {names::X2}});
  if (broken.holds) {
    r.observed = std::max(r.observed, 1.0);
    r.detail = "a non-Markov chain was accepted";
  }
  return r;
}

inline CheckResult chain_rule(const CheckOptions&) {
  CheckResult r{"entropy chain rule on random joints", 0.0, 1e-12, ""};
  std::mt19937_64 g(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> t(8);
    double sum = 0.0;
    for (double& v : t) sum += (v = u(g));
    for (double& v : t) v /= sum;
    const Alphabet b = Alphabet::binary();
    const JointPMF j({{"A", b}, {"B", b}, {"C", b}}, t);
    const double lhs = entropy(j, {"A", "B", "C"});
    const double rhs = entropy(j, {"A"}) + conditional_entropy(j, {"B"}, {"A"}) + conditional_entropy(j, {"C"}, {"A", "B"});
    r.observed = std::max(r.observed, std::abs(lhs - rhs));
  }
  return r;
}

}  // namespace check_detail

inline std::vector<CheckResult> run_checks(const CheckOptions& o = {}) {
  using namespace check_detail;
  std::vector<std::function<CheckResult(const CheckOptions&)>> checks = {
      example2_oracle, example3_oracle,  reduction_identity, inner_within_outer,
      example1_corner, marginal_invariance, markov_structure,  chain_rule};
  std::vector<CheckResult> out;
  for (const auto& c : checks) out.push_back(c(o));
  return out;
}

/// One line per check; returns true iff all passed.
inline bool report_checks(const std::vector<CheckResult>& results, std::ostream& out) {
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.passed();
    out << (r.passed() ? "PASS " : "FAIL ") << r.name << ": observed deviation " << format_number(r.observed)
        << ", tolerated " << format_number(r.tolerance);
    if (!r.detail.empty()) out << " (" << r.detail << ")";
    out << '\n';
  }
  return ok;
}

}  // namespace keyregion
