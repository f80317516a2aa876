#pragma once

// Generalized MAC kernels P(y1,y2,y3 | x1,x2), auxiliary-variable designs and
// the joint distribution they induce.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "keyregion/prob.hpp"

namespace keyregion {

/// PMF of a single finite variable.
struct Distribution {
  Alphabet alphabet;
  std::vector<double> probs;

  Distribution(Alphabet a, std::vector<double> p) : alphabet(std::move(a)), probs(std::move(p)) {
    if (probs.size() != alphabet.size()) throw std::invalid_argument("distribution size mismatch");
    double sum = 0.0;
    for (double q : probs) {
      if (!(q >= 0.0)) throw std::invalid_argument("distribution entries must be nonnegative");
      sum += q;
    }
    if (std::abs(sum - 1.0) > kPmfTolerance) throw std::invalid_argument("distribution does not sum to 1");
  }

  static Distribution uniform(Alphabet a) {
    const std::size_t n = a.size();
    return Distribution(std::move(a), std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }
  static Distribution point(Alphabet a, std::size_t at) {
    std::vector<double> p(a.size(), 0.0);
    p.at(at) = 1.0;
    return Distribution(std::move(a), std::move(p));
  }
  static Distribution singleton() { return point(Alphabet::singleton(), 0); }
  /// Bernoulli on {0,1} with P(1) = p.
  static Distribution bernoulli(double p) {
    p = detail::checked_probability(p, "bernoulli");
    return Distribution(Alphabet::binary(), {1.0 - p, p});
  }

  std::size_t size() const noexcept { return probs.size(); }
};

/// Conditional table P(out | c_1, ..., c_k). Row-major over the conditioning
/// coordinates with the output index fastest.
class Kernel {
 public:
  Kernel(std::vector<std::size_t> cond_dims, Alphabet output, std::vector<double> table)
      : cond_dims_(std::move(cond_dims)), output_(std::move(output)), table_(std::move(table)) {
    std::size_t slices = 1;
    for (std::size_t d : cond_dims_) {
      if (d == 0) throw std::invalid_argument("kernel conditioning dimension is zero");
      slices *= d;
    }
    if (table_.size() != slices * output_.size()) throw std::invalid_argument("kernel table size mismatch");
    for (std::size_t s = 0; s < slices; ++s) {
      double sum = 0.0;
      for (std::size_t o = 0; o < output_.size(); ++o) {
        const double q = table_[s * output_.size() + o];
        if (!(q >= 0.0)) throw std::invalid_argument("kernel entries must be nonnegative");
        sum += q;
      }
      if (std::abs(sum - 1.0) > kPmfTolerance) {
        throw std::invalid_argument("kernel slice " + std::to_string(s) + " sums to " + std::to_string(sum));
      }
    }
  }

  using Rule = std::function<double(std::span<const std::size_t> cond, std::size_t out)>;

  /// Tabulates `rule` over every (conditioning tuple, output) pair.
  static Kernel tabulate(std::vector<std::size_t> cond_dims, Alphabet output, const Rule& rule) {
    std::size_t slices = 1;
    for (std::size_t d : cond_dims) slices *= d;
    std::vector<double> table;
    table.reserve(slices * output.size());
    std::vector<std::size_t> cond(cond_dims.size(), 0);
    for (std::size_t s = 0; s < slices; ++s) {
      std::size_t rem = s;
      for (std::size_t k = cond_dims.size(); k-- > 0;) {
        cond[k] = rem % cond_dims[k];
        rem /= cond_dims[k];
      }
      for (std::size_t o = 0; o < output.size(); ++o) table.push_back(rule(cond, o));
    }
    return Kernel(std::move(cond_dims), std::move(output), std::move(table));
  }

  /// Output = f(conditioning tuple) with probability one.
  static Kernel deterministic(std::vector<std::size_t> cond_dims, Alphabet output,
                              const std::function<std::size_t(std::span<const std::size_t>)>& f) {
    return tabulate(std::move(cond_dims), std::move(output),
                    [&](std::span<const std::size_t> c, std::size_t o) { return f(c) == o ? 1.0 : 0.0; });
  }

  /// Output independent of the conditioning variables.
  static Kernel constant(std::vector<std::size_t> cond_dims, const Distribution& d) {
    return tabulate(std::move(cond_dims), d.alphabet,
                    [&](std::span<const std::size_t>, std::size_t o) { return d.probs[o]; });
  }

  const std::vector<std::size_t>& cond_dims() const noexcept { return cond_dims_; }
  const Alphabet& output() const noexcept { return output_; }
  std::span<const double> table() const noexcept { return table_; }

  double operator()(std::span<const std::size_t> cond, std::size_t out) const {
    return table_[slice_of(cond) * output_.size() + out];
  }
  double operator()(std::initializer_list<std::size_t> cond, std::size_t out) const {
    return (*this)(std::span<const std::size_t>(cond.begin(), cond.size()), out);
  }

  /// Output distribution for one conditioning tuple.
  std::span<const double> row(std::span<const std::size_t> cond) const {
    return std::span<const double>(table_).subspan(slice_of(cond) * output_.size(), output_.size());
  }
  std::span<const double> row(std::initializer_list<std::size_t> cond) const {
    return row(std::span<const std::size_t>(cond.begin(), cond.size()));
  }

 private:
  std::size_t slice_of(std::span<const std::size_t> cond) const {
    if (cond.size() != cond_dims_.size()) throw std::invalid_argument("kernel conditioning arity mismatch");
    std::size_t s = 0;
    for (std::size_t k = 0; k < cond.size(); ++k) {
      if (cond[k] >= cond_dims_[k]) throw std::out_of_range("kernel conditioning index out of range");
      s = s * cond_dims_[k] + cond[k];
    }
    return s;
  }

  std::vector<std::size_t> cond_dims_;
  Alphabet output_;
  std::vector<double> table_;
};

/// Memoryless generalized MAC: two inputs, three outputs (one per user).
class Gdmmac {
 public:
  Gdmmac(Alphabet x1, Alphabet x2, Alphabet y1, Alphabet y2, Alphabet y3, std::vector<double> kernel)
      : x1_(std::move(x1)),
        x2_(std::move(x2)),
        y1_(std::move(y1)),
        y2_(std::move(y2)),
        y3_(std::move(y3)),
        kernel_(std::move(kernel)) {
    const std::size_t outs = y1_.size() * y2_.size() * y3_.size();
    if (kernel_.size() != x1_.size() * x2_.size() * outs) throw std::invalid_argument("channel kernel size mismatch");
    for (std::size_t s = 0; s < x1_.size() * x2_.size(); ++s) {
      double sum = 0.0;
      for (std::size_t o = 0; o < outs; ++o) {
        const double q = kernel_[s * outs + o];
        if (!(q >= 0.0)) throw std::invalid_argument("channel kernel entries must be nonnegative");
        sum += q;
      }
      if (std::abs(sum - 1.0) > kPmfTolerance) {
        throw std::invalid_argument("channel kernel slice for input pair " + std::to_string(s) + " sums to " +
                                    std::to_string(sum));
      }
    }
    build_output_marginals();
  }

  using Rule = std::function<double(std::size_t x1, std::size_t x2, std::size_t y1, std::size_t y2, std::size_t y3)>;

  static Gdmmac tabulate(Alphabet x1, Alphabet x2, Alphabet y1, Alphabet y2, Alphabet y3, const Rule& rule) {
    std::vector<double> k;
    k.reserve(x1.size() * x2.size() * y1.size() * y2.size() * y3.size());
    for (std::size_t a = 0; a < x1.size(); ++a)
      for (std::size_t b = 0; b < x2.size(); ++b)
        for (std::size_t c = 0; c < y1.size(); ++c)
          for (std::size_t d = 0; d < y2.size(); ++d)
            for (std::size_t e = 0; e < y3.size(); ++e) k.push_back(rule(a, b, c, d, e));
    return Gdmmac(std::move(x1), std::move(x2), std::move(y1), std::move(y2), std::move(y3), std::move(k));
  }

  const Alphabet& x1() const noexcept { return x1_; }
  const Alphabet& x2() const noexcept { return x2_; }
  const Alphabet& y1() const noexcept { return y1_; }
  const Alphabet& y2() const noexcept { return y2_; }
  const Alphabet& y3() const noexcept { return y3_; }
  std::span<const double> kernel() const noexcept { return kernel_; }

  double operator()(std::size_t x1, std::size_t x2, std::size_t y1, std::size_t y2, std::size_t y3) const {
    return kernel_[((((x1 * x2_.size() + x2) * y1_.size() + y1) * y2_.size() + y2) * y3_.size()) + y3];
  }

  /// Joint output distribution for one input pair, flattened (y1, y2, y3).
  std::span<const double> outputs(std::size_t x1, std::size_t x2) const {
    const std::size_t outs = y1_.size() * y2_.size() * y3_.size();
    return std::span<const double>(kernel_).subspan((x1 * x2_.size() + x2) * outs, outs);
  }

  /// Per-output marginal kernels P(y_k | x1, x2), k in {1,2,3}.
  double y1_given(std::size_t x1, std::size_t x2, std::size_t y) const { return marg_[0][cell(x1, x2) * y1_.size() + y]; }
  double y2_given(std::size_t x1, std::size_t x2, std::size_t y) const { return marg_[1][cell(x1, x2) * y2_.size() + y]; }
  double y3_given(std::size_t x1, std::size_t x2, std::size_t y) const { return marg_[2][cell(x1, x2) * y3_.size() + y]; }

 private:
  std::size_t cell(std::size_t x1, std::size_t x2) const { return x1 * x2_.size() + x2; }

  void build_output_marginals() {
    const std::size_t n1 = y1_.size(), n2 = y2_.size(), n3 = y3_.size();
    const std::size_t cells = x1_.size() * x2_.size();
    marg_[0].assign(cells * n1, 0.0);
    marg_[1].assign(cells * n2, 0.0);
    marg_[2].assign(cells * n3, 0.0);
    for (std::size_t s = 0; s < cells; ++s) {
      for (std::size_t a = 0; a < n1; ++a)
        for (std::size_t b = 0; b < n2; ++b)
          for (std::size_t c = 0; c < n3; ++c) {
            const double q = kernel_[((s * n1 + a) * n2 + b) * n3 + c];
            marg_[0][s * n1 + a] += q;
            marg_[1][s * n2 + b] += q;
            marg_[2][s * n3 + c] += q;
          }
    }
  }

  Alphabet x1_, x2_, y1_, y2_, y3_;
  std::vector<double> kernel_;
  std::array<std::vector<double>, 3> marg_;
};

// ---------------------------------------------------------------------------
// Channel families

namespace detail {

inline double checked_crossover(double p, const char* what, bool allow_zero = true) {
  if (std::isnan(p) || p < 0.0 || p > 0.5 || (!allow_zero && p == 0.0)) {
    throw std::domain_error(std::string(what) + ": crossover probability " + std::to_string(p) +
                            (allow_zero ? " outside [0, 0.5]" : " outside (0, 0.5]"));
  }
  return p;
}

inline double bern(double p, std::size_t bit) { return bit ? p : 1.0 - p; }

inline Alphabet antipodal() { return Alphabet({"-1", "+1"}); }
inline Alphabet erasure_output() { return Alphabet({"-1", "0", "+1"}); }

inline Alphabet erasure_pair_output() {
  std::vector<std::string> s;
  for (const char* a : {"-1", "0", "+1"})
    for (const char* b : {"-1", "0", "+1"}) s.push_back(std::string("(") + a + "," + b + ")");
  return Alphabet(std::move(s));
}

/// Output index of x * e for antipodal x (index 0 -> -1, 1 -> +1); e = 0 erases.
inline std::size_t erase(std::size_t x, bool erased) { return erased ? 1 : (x == 0 ? 0 : 2); }

/// Y2 = X1+X2+A, Y3 = Y2+B, Y1 = Y3+C over GF(2) with independent A, B, C.
inline Gdmmac cascaded_binary(double pa, double pb, double pc) {
  const Alphabet bin = Alphabet::binary();
  return Gdmmac::tabulate(bin, bin, bin, bin, bin,
                          [=](std::size_t x1, std::size_t x2, std::size_t y1, std::size_t y2, std::size_t y3) {
                            const std::size_t s = x1 ^ x2;
                            return bern(pa, y2 ^ s) * bern(pb, y3 ^ y2) * bern(pc, y1 ^ y3);
                          });
}

}  // namespace detail

/// Y1 = X2*E21, Y2 = X1*E12, Y3 = (X1*E13, X2*E23) with P(Eij = 0) = pij.
/// Inputs over {-1,+1}; Y1, Y2 over {-1,0,+1} (0 = erased); Y3 is the 9-symbol
/// pair alphabet.
inline Gdmmac build_erasure_gdmmac(double p12, double p21, double p13, double p23) {
  for (double p : {p12, p21, p13, p23}) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("build_erasure_gdmmac: erasure probability outside [0,1]");
  }
  const auto erase_prob = [](double p, std::size_t x, std::size_t y) {
    if (y == 1) return p;
    return y == detail::erase(x, false) ? 1.0 - p : 0.0;
  };
  return Gdmmac::tabulate(detail::antipodal(), detail::antipodal(), detail::erasure_output(), detail::erasure_output(),
                          detail::erasure_pair_output(),
                          [&](std::size_t x1, std::size_t x2, std::size_t y1, std::size_t y2, std::size_t y3) {
                            return erase_prob(p21, x2, y1) * erase_prob(p12, x1, y2) *
                                   erase_prob(p13, x1, y3 / 3) * erase_prob(p23, x2, y3 % 3);
                          });
}

/// Same-marginal coupling of the erasure channel in which
/// Y3 = (Y2*Ey, X2*E23) and Y1 = X2*E23*Ex, so that X1 - (X2,Y2) - Y3 - Y1 and
/// X1 - Y3 - X2 hold. Needs p13 >= p12 and p21 >= p23.
inline Gdmmac build_degraded_erasure_gdmmac(double p12, double p21, double p13, double p23) {
  for (double p : {p12, p21, p13, p23}) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("build_degraded_erasure_gdmmac: probability outside [0,1]");
  }
  if (p13 < p12 || p21 < p23) throw std::domain_error("degraded erasure coupling needs p13 >= p12 and p21 >= p23");
  const double ey = p12 < 1.0 ? (p13 - p12) / (1.0 - p12) : 0.0;
  const double ex = p23 < 1.0 ? (p21 - p23) / (1.0 - p23) : 0.0;
  return Gdmmac::tabulate(
      detail::antipodal(), detail::antipodal(), detail::erasure_output(), detail::erasure_output(),
      detail::erasure_pair_output(),
      [&](std::size_t x1, std::size_t x2, std::size_t y1, std::size_t y2, std::size_t y3) {
        double total = 0.0;
        for (int e12 = 0; e12 < 2; ++e12)
          for (int e23 = 0; e23 < 2; ++e23)
            for (int e_y = 0; e_y < 2; ++e_y)
              for (int e_x = 0; e_x < 2; ++e_x) {
                const double w = (e12 ? 1 - p12 : p12) * (e23 ? 1 - p23 : p23) * (e_y ? 1 - ey : ey) *
                                 (e_x ? 1 - ex : ex);
                if (w == 0.0) continue;
                const std::size_t o2 = detail::erase(x1, !e12);
                const std::size_t o3a = detail::erase(x1, !(e12 && e_y));
                const std::size_t o3b = detail::erase(x2, !e23);
                const std::size_t o1 = detail::erase(x2, !(e23 && e_x));
                if (o1 == y1 && o2 == y2 && o3a * 3 + o3b == y3) total += w;
              }
        return total;
      });
}

/// Yi = X1 + X2 + Zi over GF(2), independent Zi ~ Bernoulli(pi), pi in [0, 0.5].
inline Gdmmac build_binary_sum_gdmmac(double p1, double p2, double p3) {
  detail::checked_crossover(p1, "build_binary_sum_gdmmac");
  detail::checked_crossover(p2, "build_binary_sum_gdmmac");
  detail::checked_crossover(p3, "build_binary_sum_gdmmac");
  const Alphabet bin = Alphabet::binary();
  return Gdmmac::tabulate(bin, bin, bin, bin, bin,
                          [=](std::size_t x1, std::size_t x2, std::size_t y1, std::size_t y2, std::size_t y3) {
                            const std::size_t s = x1 ^ x2;
                            return detail::bern(p1, y1 ^ s) * detail::bern(p2, y2 ^ s) * detail::bern(p3, y3 ^ s);
                          });
}

/// Physically degraded channel with the same per-output marginals as
/// build_binary_sum_gdmmac(p1, p2, p3): Y2 = X + Z2, Y3 = Y2 + Zx, Y1 = Y3 + Zy.
/// Needs 0 <= p2 <= p3 <= p1 <= 0.5.
inline Gdmmac build_degraded_binary_sum_gdmmac(double p1, double p2, double p3) {
  detail::checked_crossover(p1, "build_degraded_binary_sum_gdmmac");
  detail::checked_crossover(p2, "build_degraded_binary_sum_gdmmac");
  detail::checked_crossover(p3, "build_degraded_binary_sum_gdmmac");
  if (!(p2 <= p3 && p3 <= p1)) throw std::domain_error("degraded binary-sum coupling needs p2 <= p3 <= p1");
  const double px = p2 < 0.5 ? (p3 - p2) / (1.0 - 2.0 * p2) : 0.0;
  const double py = p3 < 0.5 ? (p1 - p3) / (1.0 - 2.0 * p3) : 0.0;
  return detail::cascaded_binary(p2, px, py);
}

/// Y1 = X+Z1+Z2+Z3, Y2 = X+Z2, Y3 = X+Z2+Z3 (X = X1+X2), pi in (0, 0.5].
inline Gdmmac build_correlated_noise_gdmmac(double p1, double p2, double p3) {
  detail::checked_crossover(p1, "build_correlated_noise_gdmmac", false);
  detail::checked_crossover(p2, "build_correlated_noise_gdmmac", false);
  detail::checked_crossover(p3, "build_correlated_noise_gdmmac", false);
  return detail::cascaded_binary(p2, p3, p1);
}

/// Channel whose outputs are conditionally independent given the inputs, with
/// the same per-output marginals as `ch`.
inline Gdmmac marginal_product_channel(const Gdmmac& ch) {
  return Gdmmac::tabulate(ch.x1(), ch.x2(), ch.y1(), ch.y2(), ch.y3(),
                          [&](std::size_t x1, std::size_t x2, std::size_t y1, std::size_t y2, std::size_t y3) {
                            return ch.y1_given(x1, x2, y1) * ch.y2_given(x1, x2, y2) * ch.y3_given(x1, x2, y3);
                          });
}

// ---------------------------------------------------------------------------
// Auxiliary designs

/// Secondary-key kernels; each conditions on (own input, own output, own S).
struct TLayer {
  Kernel t12;  // P(t12 | x1, y1, s12)
  Kernel t13;  // P(t13 | x1, y1, s13)
  Kernel t21;  // P(t21 | x2, y2, s21)
  Kernel t23;  // P(t23 | x2, y2, s23)
};

/// Independent auxiliaries S12, S13, S21, S23 feeding input kernels, with an
/// optional T layer for the generalized scheme.
struct AuxDesign {
  Distribution s12, s13, s21, s23;
  Kernel x1;  // P(x1 | s12, s13)
  Kernel x2;  // P(x2 | s21, s23)
  std::optional<TLayer> t;

  bool has_t_layer() const noexcept { return t.has_value(); }

  void check_compatible(const Gdmmac& ch) const {
    auto expect = [](bool ok, const std::string& what) {
      if (!ok) throw std::invalid_argument("design/channel dimension mismatch: " + what);
    };
    expect(x1.cond_dims() == std::vector<std::size_t>{s12.size(), s13.size()}, "X1 kernel conditions on (S12,S13)");
    expect(x2.cond_dims() == std::vector<std::size_t>{s21.size(), s23.size()}, "X2 kernel conditions on (S21,S23)");
    expect(x1.output().size() == ch.x1().size(), "X1 alphabet");
    expect(x2.output().size() == ch.x2().size(), "X2 alphabet");
    if (t) {
      const std::size_t nx1 = ch.x1().size(), ny1 = ch.y1().size(), nx2 = ch.x2().size(), ny2 = ch.y2().size();
      expect(t->t12.cond_dims() == std::vector<std::size_t>{nx1, ny1, s12.size()}, "T12 kernel conditions on (X1,Y1,S12)");
      expect(t->t13.cond_dims() == std::vector<std::size_t>{nx1, ny1, s13.size()}, "T13 kernel conditions on (X1,Y1,S13)");
      expect(t->t21.cond_dims() == std::vector<std::size_t>{nx2, ny2, s21.size()}, "T21 kernel conditions on (X2,Y2,S21)");
      expect(t->t23.cond_dims() == std::vector<std::size_t>{nx2, ny2, s23.size()}, "T23 kernel conditions on (X2,Y2,S23)");
    }
  }
};

/// T layer with every auxiliary constant.
inline TLayer singleton_t_layer(const Gdmmac& ch, const AuxDesign& d) {
  const std::size_t nx1 = ch.x1().size(), ny1 = ch.y1().size(), nx2 = ch.x2().size(), ny2 = ch.y2().size();
  const Distribution one = Distribution::singleton();
  return TLayer{Kernel::constant({nx1, ny1, d.s12.size()}, one), Kernel::constant({nx1, ny1, d.s13.size()}, one),
                Kernel::constant({nx2, ny2, d.s21.size()}, one), Kernel::constant({nx2, ny2, d.s23.size()}, one)};
}

namespace names {
inline const std::string S12 = "S12", S13 = "S13", S21 = "S21", S23 = "S23";
inline const std::string X1 = "X1", X2 = "X2", Y1 = "Y1", Y2 = "Y2", Y3 = "Y3";
inline const std::string T12 = "T12", T13 = "T13", T21 = "T21", T23 = "T23";
inline const std::string U = "U";
}  // namespace names

/// Full joint over S12,S13,S21,S23,X1,X2,Y1,Y2,Y3 (then T12,T13,T21,T23 when
/// the design carries a T layer), built as the product of the design factors
/// and the channel kernel.
inline JointPMF induce_joint(const Gdmmac& ch, const AuxDesign& d) {
  d.check_compatible(ch);
  using namespace names;
  std::vector<Variable> vars = {{S12, d.s12.alphabet}, {S13, d.s13.alphabet}, {S21, d.s21.alphabet},
                                {S23, d.s23.alphabet}, {X1, ch.x1()},        {X2, ch.x2()},
                                {Y1, ch.y1()},         {Y2, ch.y2()},        {Y3, ch.y3()}};
  if (d.t) {
    vars.push_back({T12, d.t->t12.output()});
    vars.push_back({T13, d.t->t13.output()});
    vars.push_back({T21, d.t->t21.output()});
    vars.push_back({T23, d.t->t23.output()});
  }
  std::size_t total = 1;
  for (const auto& v : vars) total *= v.alphabet.size();
  std::vector<double> table(total, 0.0);

  const std::size_t n12 = d.s12.size(), n13 = d.s13.size(), n21 = d.s21.size(), n23 = d.s23.size();
  const std::size_t nx1 = ch.x1().size(), nx2 = ch.x2().size();
  const std::size_t ny1 = ch.y1().size(), ny2 = ch.y2().size(), ny3 = ch.y3().size();
  const std::size_t nt12 = d.t ? d.t->t12.output().size() : 1, nt13 = d.t ? d.t->t13.output().size() : 1;
  const std::size_t nt21 = d.t ? d.t->t21.output().size() : 1, nt23 = d.t ? d.t->t23.output().size() : 1;
  const std::size_t t_block = nt12 * nt13 * nt21 * nt23;

  std::size_t flat_prefix = 0;
  for (std::size_t a = 0; a < n12; ++a)
    for (std::size_t b = 0; b < n13; ++b)
      for (std::size_t c = 0; c < n21; ++c)
        for (std::size_t e = 0; e < n23; ++e) {
          const double ps = d.s12.probs[a] * d.s13.probs[b] * d.s21.probs[c] * d.s23.probs[e];
          for (std::size_t x1 = 0; x1 < nx1; ++x1)
            for (std::size_t x2 = 0; x2 < nx2; ++x2) {
              const double px = ps * d.x1({a, b}, x1) * d.x2({c, e}, x2);
              for (std::size_t y1 = 0; y1 < ny1; ++y1)
                for (std::size_t y2 = 0; y2 < ny2; ++y2)
                  for (std::size_t y3 = 0; y3 < ny3; ++y3, ++flat_prefix) {
                    const double py = px == 0.0 ? 0.0 : px * ch(x1, x2, y1, y2, y3);
                    if (py == 0.0) continue;
                    double* out = table.data() + flat_prefix * t_block;
                    if (!d.t) {
                      *out = py;
                      continue;
                    }
                    const auto r12 = d.t->t12.row({x1, y1, a});
                    const auto r13 = d.t->t13.row({x1, y1, b});
                    const auto r21 = d.t->t21.row({x2, y2, c});
                    const auto r23 = d.t->t23.row({x2, y2, e});
                    std::size_t k = 0;
                    for (std::size_t i = 0; i < nt12; ++i)
                      for (std::size_t j = 0; j < nt13; ++j)
                        for (std::size_t l = 0; l < nt21; ++l)
                          for (std::size_t m = 0; m < nt23; ++m, ++k) out[k] = py * r12[i] * r13[j] * r21[l] * r23[m];
                  }
            }
        }
  return JointPMF(std::move(vars), std::move(table));
}

/// Appends Y1, Y2, Y3 to a joint that contains X1 and X2 (plus anything else,
/// e.g. a time-sharing variable U). The outputs depend on the rest only through
/// (X1, X2).
inline JointPMF attach_channel(const Gdmmac& ch, const JointPMF& inputs) {
  using namespace names;
  const std::size_t ix1 = inputs.index_of(X1), ix2 = inputs.index_of(X2);
  if (inputs.variables()[ix1].alphabet.size() != ch.x1().size() ||
      inputs.variables()[ix2].alphabet.size() != ch.x2().size()) {
    throw std::invalid_argument("attach_channel: input alphabet sizes do not match channel");
  }
  for (const auto& n : {Y1, Y2, Y3}) {
    if (inputs.has(n)) throw std::invalid_argument("attach_channel: inputs already contain " + n);
  }
  std::vector<Variable> vars = inputs.variables();
  vars.push_back({Y1, ch.y1()});
  vars.push_back({Y2, ch.y2()});
  vars.push_back({Y3, ch.y3()});
  const std::size_t outs = ch.y1().size() * ch.y2().size() * ch.y3().size();
  std::vector<double> table(inputs.size() * outs, 0.0);
  for (std::size_t flat = 0; flat < inputs.size(); ++flat) {
    const double p = inputs.table()[flat];
    if (p == 0.0) continue;
    const auto row = ch.outputs(inputs.coord(flat, ix1), inputs.coord(flat, ix2));
    for (std::size_t o = 0; o < outs; ++o) table[flat * outs + o] = p * row[o];
  }
  return JointPMF(std::move(vars), std::move(table));
}

}  // namespace keyregion
