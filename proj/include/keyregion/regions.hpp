#pragma once

// Inner and outer bounds on the pairwise secret-key rate region, evaluated on
// a concrete joint distribution, plus grid sweeps and 2-D projections.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "keyregion/channel.hpp"
#include "keyregion/prob.hpp"

namespace keyregion {

inline constexpr double kFeasibilityTolerance = 1e-9;

/// Key rates in bits per channel use.
struct RateTriple {
  double r12 = 0.0;
  double r13 = 0.0;
  double r23 = 0.0;
};

/// The six rate atoms of the pre-generated keys scheme.
struct PreGenAtoms {
  double r12 = 0.0;
  double r21 = 0.0;
  double i12 = 0.0;
  double r13 = 0.0;
  double r23 = 0.0;
  double i3 = 0.0;
};

/// Primary (p) and secondary (s) atoms of the generalized scheme, plus the
/// five transmissibility constraints as RHS - LHS.
struct GenAtoms {
  PreGenAtoms primary;
  PreGenAtoms secondary;
  std::array<double, 5> constraint_slacks{};
};

enum class Scheme { pregen, generalized };

inline const char* to_string(Scheme s) { return s == Scheme::pregen ? "pregen" : "generalized"; }

struct RegionEvaluation {
  Scheme scheme = Scheme::pregen;
  std::variant<PreGenAtoms, GenAtoms> atoms;
  double bound_r12 = 0.0;
  double bound_r13 = 0.0;
  double bound_r23 = 0.0;
  double bound_r13_plus_r23 = 0.0;
  bool feasible = true;

  RateTriple bounds() const { return {bound_r12, bound_r13, bound_r23}; }
};

namespace detail {

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

inline void require_variables(const JointPMF& joint, std::initializer_list<const std::string*> required,
                              const char* who) {
  for (const std::string* n : required) {
    if (!joint.has(*n)) throw std::invalid_argument(std::string(who) + ": joint is missing variable " + *n);
  }
}

}  // namespace detail

/// Pre-generated keys scheme atoms:
///   r12 = [I(S12;X2,Y2) - I(S12;Y3,S13,S23)]+
///   r21 = [I(S21;X1,Y1) - I(S21;Y3,S13,S23)]+
///   i12 = I(S12;S21 | Y3,S13,S23)
///   r13 = [I(S13;Y3|S23) - I(S13;X2,Y2,S12|S23)]+
///   r23 = [I(S23;Y3|S13) - I(S23;X1,Y1,S21|S13)]+
///   i3  = I(S13;S23 | Y3)
inline PreGenAtoms pregen_atoms(const JointPMF& joint) {
  using namespace names;
  detail::require_variables(joint, {&S12, &S13, &S21, &S23, &X1, &X2, &Y1, &Y2, &Y3}, "pregen_atoms");
  EntropyCalculator c(joint);
  const auto pos = detail::positive_part;
  PreGenAtoms a;
  a.r12 = pos(c.conditional_mutual_information({S12}, {X2, Y2}) -
              c.conditional_mutual_information({S12}, {Y3, S13, S23}));
  a.r21 = pos(c.conditional_mutual_information({S21}, {X1, Y1}) -
              c.conditional_mutual_information({S21}, {Y3, S13, S23}));
  a.i12 = c.conditional_mutual_information({S12}, {S21}, {Y3, S13, S23});
  a.r13 = pos(c.conditional_mutual_information({S13}, {Y3}, {S23}) -
              c.conditional_mutual_information({S13}, {X2, Y2, S12}, {S23}));
  a.r23 = pos(c.conditional_mutual_information({S23}, {Y3}, {S13}) -
              c.conditional_mutual_information({S23}, {X1, Y1, S21}, {S13}));
  a.i3 = c.conditional_mutual_information({S13}, {S23}, {Y3});
  return a;
}

inline RegionEvaluation pregen_region(const PreGenAtoms& a) {
  RegionEvaluation e;
  e.scheme = Scheme::pregen;
  e.atoms = a;
  e.bound_r12 = detail::positive_part(a.r12 + a.r21 - a.i12);
  e.bound_r13 = a.r13;
  e.bound_r23 = a.r23;
  e.bound_r13_plus_r23 = detail::positive_part(a.r13 + a.r23 - a.i3);
  e.feasible = true;
  return e;
}

/// Generalized scheme atoms and constraint slacks. The primary atoms see the
/// eavesdropper's secondary auxiliaries; the secondary atoms are conditioned on
/// the primary layer.
inline GenAtoms gen_atoms(const JointPMF& joint) {
  using namespace names;
  detail::require_variables(joint, {&S12, &S13, &S21, &S23, &X1, &X2, &Y1, &Y2, &Y3, &T12, &T13, &T21, &T23},
                            "gen_atoms");
  EntropyCalculator c(joint);
  auto I = [&c](const VarSet& a, const VarSet& b, const VarSet& cond = {}) {
    return c.conditional_mutual_information(a, b, cond);
  };
  const auto pos = detail::positive_part;

  GenAtoms g;
  PreGenAtoms& p = g.primary;
  p.r12 = pos(I({S12}, {X2, Y2}) - I({S12}, {Y3, S13, S23, T13, T23}));
  p.r21 = pos(I({S21}, {X1, Y1}) - I({S21}, {Y3, S13, S23, T13, T23}));
  p.i12 = I({S12}, {S21}, {Y3, S13, S23, T13, T23});
  p.r13 = pos(I({S13}, {Y3}, {S23}) - I({S13}, {X2, Y2, S12, T12}, {S23}));
  p.r23 = pos(I({S23}, {Y3}, {S13}) - I({S23}, {X1, Y1, S21, T21}, {S13}));
  p.i3 = I({S13}, {S23}, {Y3});

  PreGenAtoms& s = g.secondary;
  s.r12 = pos(I({T12}, {X2, Y2}, {S12, S21}) - I({T12}, {Y3, S13, S23, T13, T23}, {S12, S21}));
  s.r21 = pos(I({T21}, {X1, Y1}, {S12, S21}) - I({T21}, {Y3, S13, S23, T13, T23}, {S12, S21}));
  s.i12 = I({T12}, {T21}, {Y3, S13, S23, T13, T23, S12, S21});
  s.r13 = pos(I({T13}, {Y3}, {S13, S23, T23}) - I({T13}, {X2, Y2, S12, T12}, {S13, S23, T23}));
  s.r23 = pos(I({T23}, {Y3}, {S13, S23, T13}) - I({T23}, {X1, Y1, S21, T21}, {S13, S23, T13}));
  s.i3 = I({T13}, {T23}, {Y3, S13, S23});

  g.constraint_slacks = {
      I({S12}, {X2, Y2}) - I({T12}, {X1, Y1}, {X2, Y2, S12, S21}),
      I({S13}, {Y3}, {S23}) - I({T13}, {X1, Y1}, {Y3, S13, S23, T23}),
      I({S21}, {X1, Y1}) - I({T21}, {X2, Y2}, {X1, Y1, S12, S21}),
      I({S23}, {Y3}, {S13}) - I({T23}, {X2, Y2}, {Y3, S13, S23, T13}),
      I({S13, S23}, {Y3}) - I({T13, T23}, {X1, Y1, X2, Y2}, {Y3, S13, S23}),
  };
  return g;
}

inline RegionEvaluation gen_region(const GenAtoms& g) {
  const auto pos = detail::positive_part;
  const PreGenAtoms& p = g.primary;
  const PreGenAtoms& s = g.secondary;
  RegionEvaluation e;
  e.scheme = Scheme::generalized;
  e.atoms = g;
  e.bound_r12 = pos(p.r12 + p.r21 - p.i12) + pos(s.r12 + s.r21 - s.i12);
  e.bound_r13 = p.r13 + s.r13;
  e.bound_r23 = p.r23 + s.r23;
  e.bound_r13_plus_r23 = pos(p.r13 + p.r23 - p.i3) + pos(s.r13 + s.r23 - s.i3);
  e.feasible = std::all_of(g.constraint_slacks.begin(), g.constraint_slacks.end(),
                           [](double slack) { return slack >= -kFeasibilityTolerance; });
  return e;
}

/// Picks the scheme from the design: a T layer means the generalized scheme.
inline RegionEvaluation evaluate_design(const Gdmmac& ch, const AuxDesign& d) {
  const JointPMF joint = induce_joint(ch, d);
  return d.has_t_layer() ? gen_region(gen_atoms(joint)) : pregen_region(pregen_atoms(joint));
}

// ---------------------------------------------------------------------------
// Outer bounds

namespace detail {

inline void require_outer_bound_joint(const JointPMF& j, const char* who) {
  using namespace names;
  require_variables(j, {&U, &X1, &X2, &Y1, &Y2, &Y3}, who);
  const MarkovCheck m = is_markov_chain(j, {{U}, {X1, X2}, {Y1, Y2, Y3}}, 1e-9);
  if (!m.holds) {
    throw std::invalid_argument(std::string(who) + ": U - (X1,X2) - (Y1,Y2,Y3) violated by " +
                                std::to_string(m.max_violation) + " bits");
  }
}

inline double outer_r12(EntropyCalculator& c) {
  using namespace names;
  const double v = c.conditional_mutual_information({X1}, {Y2}, {X2, Y3}) +
                   c.conditional_mutual_information({X2}, {Y1}, {X1, Y3}) +
                   c.conditional_mutual_information({Y1}, {Y2}, {X1, X2, Y3}) +
                   c.conditional_mutual_information({X1}, {Y3}, {X2, U}) -
                   c.conditional_mutual_information({X1}, {Y3}, {U});
  return positive_part(v);
}

}  // namespace detail

/// Pre-generated scheme outer bound on a joint over (U, X1, X2, Y1, Y2, Y3).
/// A negative right-hand side is reported as 0 since rates are nonnegative.
inline RateTriple outer_bound_th2(const JointPMF& joint_with_u) {
  using namespace names;
  detail::require_outer_bound_joint(joint_with_u, "outer_bound_th2");
  EntropyCalculator c(joint_with_u);
  return {detail::outer_r12(c), c.conditional_mutual_information({X1}, {Y3}, {X2, Y2}),
          c.conditional_mutual_information({X2}, {Y3}, {X1, Y1})};
}

/// Generalized scheme outer bound; the R13/R23 terms let the transmitter's own
/// output carry key material.
inline RateTriple outer_bound_th4(const JointPMF& joint_with_u) {
  using namespace names;
  detail::require_outer_bound_joint(joint_with_u, "outer_bound_th4");
  EntropyCalculator c(joint_with_u);
  return {detail::outer_r12(c), c.conditional_mutual_information({X1, Y1}, {Y3}, {X2, Y2}),
          c.conditional_mutual_information({X2, Y2}, {Y3}, {X1, Y1})};
}

// ---------------------------------------------------------------------------
// Sweeps

struct GridAxis {
  std::string name;
  double lo = 0.0;
  double hi = 0.5;
  double step = 0.01;

  /// lo, lo+step, ..., up to hi (inclusive within 1e-9 of a step).
  std::vector<double> values() const {
    if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("grid axis '" + name + "': step must be > 0");
    if (!(lo <= hi)) throw std::invalid_argument("grid axis '" + name + "': empty range");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> v;
    v.reserve(count);
    for (std::size_t i = 0; i < count; ++i) v.push_back(std::min(lo + static_cast<double>(i) * step, hi));
    return v;
  }
};

using DesignFamily = std::function<AuxDesign(std::span<const double> params)>;

struct SweepPoint {
  std::vector<double> params;
  RegionEvaluation eval;
};

/// Every point of the Cartesian grid, lexicographic (first axis slowest).
inline std::vector<std::vector<double>> grid_points(const std::vector<GridAxis>& axes) {
  std::vector<std::vector<double>> values;
  std::size_t total = 1;
  for (const auto& a : axes) {
    values.push_back(a.values());
    total *= values.back().size();
  }
  std::vector<std::vector<double>> out;
  out.reserve(total);
  std::vector<std::size_t> idx(axes.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::vector<double> p(axes.size());
    for (std::size_t k = 0; k < axes.size(); ++k) p[k] = values[k][idx[k]];
    out.push_back(std::move(p));
    for (std::size_t k = axes.size(); k-- > 0;) {
      if (++idx[k] < values[k].size()) break;
      idx[k] = 0;
    }
  }
  return out;
}

/// Evaluates the region at every grid point. Points are split across
/// `threads` workers; output order is the lexicographic grid order regardless.
/// Infeasible generalized-scheme points are kept with feasible = false.
inline std::vector<SweepPoint> sweep(const Gdmmac& ch, const DesignFamily& family, const std::vector<GridAxis>& axes,
                                     unsigned threads = 1) {
  const auto points = grid_points(axes);
  if (points.empty()) throw std::invalid_argument("sweep: empty grid");
  std::vector<SweepPoint> out(points.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < points.size(); i += stride) {
      out[i] = SweepPoint{points[i], evaluate_design(ch, family(points[i]))};
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(points.size())));
  if (threads == 1) {
    work(0, 1);
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        work(t, threads);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// 2-D projections

enum class RateAxis { r12, r13, r23 };

inline double coordinate(const RateTriple& t, RateAxis a) {
  switch (a) {
    case RateAxis::r12: return t.r12;
    case RateAxis::r13: return t.r13;
    case RateAxis::r23: return t.r23;
  }
  return 0.0;
}

inline const char* to_string(RateAxis a) {
  switch (a) {
    case RateAxis::r12: return "R12";
    case RateAxis::r13: return "R13";
    case RateAxis::r23: return "R23";
  }
  return "?";
}

/// Pareto-maximal vertices of {R >= 0 : R12 <= b12, R13 <= b13, R23 <= b23,
/// R13 + R23 <= b_sum}. Projecting these onto any axis pair gives the maximal
/// corners of that projection.
inline std::array<RateTriple, 2> maximal_vertices(const RegionEvaluation& e) {
  const double s = e.bound_r13_plus_r23;
  const double r13 = std::min(e.bound_r13, s);
  const double r23 = std::min(e.bound_r23, s);
  return {RateTriple{e.bound_r12, r13, std::max(0.0, std::min(r23, s - r13))},
          RateTriple{e.bound_r12, std::max(0.0, std::min(r13, s - r23)), r23}};
}

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point2&) const = default;
};

/// Maximal points of the projection onto (first, second), sorted by x. With
/// `convex_hull`, returns instead the vertices of the upper concave envelope of
/// the down-closed region, from (0, y_max) to (x_max, 0): the time-sharing
/// closure of the projected region.
inline std::vector<Point2> pareto_project(std::span<const RateTriple> points, RateAxis first, RateAxis second,
                                          bool convex_hull = false) {
  if (points.empty()) throw std::invalid_argument("pareto_project: no points");
  std::vector<Point2> pts;
  pts.reserve(points.size());
  for (const auto& t : points) pts.push_back({coordinate(t, first), coordinate(t, second)});
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) { return a.x != b.x ? a.x > b.x : a.y > b.y; });
  std::vector<Point2> stair;
  for (const auto& p : pts) {
    if (stair.empty() || p.y > stair.back().y) stair.push_back(p);
  }
  std::reverse(stair.begin(), stair.end());
  if (!convex_hull) return stair;

  std::vector<Point2> cand;
  cand.push_back({0.0, stair.front().y});
  cand.insert(cand.end(), stair.begin(), stair.end());
  cand.push_back({stair.back().x, 0.0});
  // x is nondecreasing along cand; monotone-chain upper hull.
  std::vector<Point2> hull;
  for (const auto& p : cand) {
    if (!hull.empty() && hull.back() == p) continue;
    while (hull.size() >= 2) {
      const Point2& o = hull[hull.size() - 2];
      const Point2& a = hull.back();
      const double cross = (a.x - o.x) * (p.y - o.y) - (a.y - o.y) * (p.x - o.x);
      if (cross >= 0.0 && !(a.x == o.x && p.x == a.x)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  return hull;
}

}  // namespace keyregion
