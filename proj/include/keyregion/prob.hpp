#pragma once

// Exact finite-alphabet probability calculus: joint PMFs over named
// variables, marginals, entropies (bits) and conditional mutual information.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace keyregion {

inline constexpr double kPmfTolerance = 1e-9;
inline constexpr double kMiClampTolerance = 1e-9;
inline constexpr double kProbabilityDomainSlack = 1e-12;

/// Ordered set of distinct symbol labels.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw std::invalid_argument("alphabet must have at least one symbol");
    std::unordered_set<std::string> seen;
    for (const auto& s : symbols_) {
      if (!seen.insert(s).second) throw std::invalid_argument("duplicate alphabet symbol '" + s + "'");
    }
  }

  /// Symbols "0", "1", ..., "n-1".
  static Alphabet range(std::size_t n) {
    std::vector<std::string> s;
    s.reserve(n);
    for (std::size_t i = 0; i < n; ++i) s.push_back(std::to_string(i));
    return Alphabet(std::move(s));
  }

  /// The one-symbol alphabet used for absent auxiliaries.
  static Alphabet singleton() { return Alphabet({"-"}); }

  static Alphabet binary() { return range(2); }

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::string& symbol(std::size_t i) const { return symbols_.at(i); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }

  std::size_t index_of(std::string_view label) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), label);
    if (it == symbols_.end()) throw std::invalid_argument("unknown symbol '" + std::string(label) + "'");
    return static_cast<std::size_t>(it - symbols_.begin());
  }

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> symbols_;
};

struct Variable {
  std::string name;
  Alphabet alphabet;
};

using VarSet = std::vector<std::string>;

/// Dense joint probability table over named finite variables, row-major
/// (last variable varies fastest). Immutable after construction.
class JointPMF {
 public:
  JointPMF(std::vector<Variable> variables, std::vector<double> table)
      : variables_(std::move(variables)), table_(std::move(table)) {
    if (variables_.empty()) throw std::invalid_argument("joint PMF needs at least one variable");
    std::unordered_set<std::string> names;
    std::size_t total = 1;
    for (const auto& v : variables_) {
      if (v.name.empty()) throw std::invalid_argument("variable name must be nonempty");
      if (!names.insert(v.name).second) throw std::invalid_argument("duplicate variable '" + v.name + "'");
      total *= v.alphabet.size();
    }
    if (table_.size() != total) {
      throw std::invalid_argument("table has " + std::to_string(table_.size()) + " entries, shape requires " +
                                  std::to_string(total));
    }
    double sum = 0.0;
    for (double p : table_) {
      if (!(p >= 0.0)) throw std::invalid_argument("joint PMF entries must be nonnegative");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kPmfTolerance) {
      throw std::invalid_argument("joint PMF sums to " + std::to_string(sum) + ", expected 1");
    }
    strides_.assign(variables_.size(), 1);
    for (std::size_t i = variables_.size() - 1; i > 0; --i) {
      strides_[i - 1] = strides_[i] * variables_[i].alphabet.size();
    }
  }

  const std::vector<Variable>& variables() const noexcept { return variables_; }
  std::size_t rank() const noexcept { return variables_.size(); }
  std::span<const double> table() const noexcept { return table_; }
  std::size_t size() const noexcept { return table_.size(); }

  std::size_t dim(std::size_t var) const { return variables_.at(var).alphabet.size(); }
  std::size_t stride(std::size_t var) const { return strides_.at(var); }

  bool has(std::string_view name) const noexcept {
    return std::any_of(variables_.begin(), variables_.end(), [&](const Variable& v) { return v.name == name; });
  }

  std::size_t index_of(std::string_view name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (variables_[i].name == name) return i;
    }
    throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
  }

  std::size_t flat_index(std::span<const std::size_t> coords) const {
    if (coords.size() != rank()) throw std::invalid_argument("coordinate rank mismatch");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] >= dim(i)) throw std::out_of_range("coordinate out of range");
      flat += coords[i] * strides_[i];
    }
    return flat;
  }

  double at(std::span<const std::size_t> coords) const { return table_[flat_index(coords)]; }
  double at(std::initializer_list<std::size_t> coords) const {
    return at(std::span<const std::size_t>(coords.begin(), coords.size()));
  }

  /// Coordinate of variable `var` within flat index `flat`.
  std::size_t coord(std::size_t flat, std::size_t var) const { return (flat / strides_[var]) % dim(var); }

 private:
  std::vector<Variable> variables_;
  std::vector<double> table_;
  std::vector<std::size_t> strides_;
};

// ---------------------------------------------------------------------------
// Scalar helpers

namespace detail {

inline double checked_probability(double p, const char* what) {
  if (std::isnan(p) || p < -kProbabilityDomainSlack || p > 1.0 + kProbabilityDomainSlack) {
    throw std::domain_error(std::string(what) + ": probability " + std::to_string(p) + " outside [0,1]");
  }
  return std::clamp(p, 0.0, 1.0);
}

inline double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

}  // namespace detail

/// h(p) in bits, with 0 log 0 = 0.
inline double binary_entropy(double p) {
  p = detail::checked_probability(p, "binary_entropy");
  return -detail::plogp(p) - detail::plogp(1.0 - p);
}

/// a * b = a(1-b) + b(1-a): crossover of two cascaded binary symmetric channels.
inline double binary_convolution(double a, double b) {
  a = detail::checked_probability(a, "binary_convolution");
  b = detail::checked_probability(b, "binary_convolution");
  return a * (1.0 - b) + b * (1.0 - a);
}

/// Left fold of binary_convolution over all arguments.
inline double binary_convolution(std::initializer_list<double> terms) {
  if (terms.size() == 0) throw std::invalid_argument("binary_convolution of nothing");
  auto it = terms.begin();
  double acc = detail::checked_probability(*it++, "binary_convolution");
  for (; it != terms.end(); ++it) acc = binary_convolution(acc, *it);
  return acc;
}

// ---------------------------------------------------------------------------
// Entropy engine

/// Memoizing entropy evaluator over one joint. Marginal entropies are cached
/// by variable bitmask, so a batch of mutual-information terms over the same
/// joint costs one pass per distinct subset. Not thread-safe; make one per
/// thread.
class EntropyCalculator {
 public:
  using Mask = std::uint64_t;

  explicit EntropyCalculator(const JointPMF& pmf) : pmf_(&pmf) {
    if (pmf.rank() > 64) throw std::invalid_argument("at most 64 variables supported");
    const std::size_t rank = pmf.rank();
    for (std::size_t flat = 0; flat < pmf.size(); ++flat) {
      const double p = pmf.table()[flat];
      if (p <= 0.0) continue;
      probs_.push_back(p);
      for (std::size_t v = 0; v < rank; ++v) coords_.push_back(static_cast<std::uint32_t>(pmf.coord(flat, v)));
    }
  }

  const JointPMF& pmf() const noexcept { return *pmf_; }

  Mask mask_of(const VarSet& names) const {
    Mask m = 0;
    for (const auto& n : names) m |= Mask{1} << pmf_->index_of(n);
    return m;
  }

  double entropy(Mask mask) {
    if (mask == 0) return 0.0;
    if (auto it = cache_.find(mask); it != cache_.end()) return it->second;
    const double h = compute_entropy(mask);
    cache_.emplace(mask, h);
    return h;
  }

  double entropy(const VarSet& names) { return entropy(mask_of(names)); }

  /// I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C); tiny negatives clamped.
  double conditional_mutual_information(Mask a, Mask b, Mask c) {
    if ((a & b) || (a & c) || (b & c)) throw std::invalid_argument("mutual information sets must be disjoint");
    if (a == 0 || b == 0) return 0.0;
    const double v = entropy(a | c) + entropy(b | c) - entropy(a | b | c) - entropy(c);
    return std::max(v, 0.0);
  }

  double conditional_mutual_information(const VarSet& a, const VarSet& b, const VarSet& c = {}) {
    check_disjoint(a, b, c);
    return conditional_mutual_information(mask_of(a), mask_of(b), mask_of(c));
  }

 private:
  static void check_disjoint(const VarSet& a, const VarSet& b, const VarSet& c) {
    std::unordered_set<std::string> seen;
    for (const VarSet* s : {&a, &b, &c}) {
      for (const auto& n : *s) {
        if (!seen.insert(n).second) throw std::invalid_argument("variable '" + n + "' appears in more than one set");
      }
    }
  }

  double compute_entropy(Mask mask) const {
    const std::size_t rank = pmf_->rank();
    std::vector<std::size_t> kept;
    std::vector<std::size_t> mult;
    std::size_t cells = 1;
    for (std::size_t v = 0; v < rank; ++v) {
      if (mask & (Mask{1} << v)) {
        kept.push_back(v);
        mult.push_back(cells);
        cells *= pmf_->dim(v);
      }
    }
    const std::size_t n = probs_.size();
    auto key_of = [&](std::size_t e) {
      std::size_t key = 0;
      const std::uint32_t* c = coords_.data() + e * rank;
      for (std::size_t k = 0; k < kept.size(); ++k) key += c[kept[k]] * mult[k];
      return key;
    };
    double h = 0.0;
    if (cells <= (std::size_t{1} << 22)) {
      std::vector<double> marginal(cells, 0.0);
      for (std::size_t e = 0; e < n; ++e) marginal[key_of(e)] += probs_[e];
      for (double p : marginal) h -= detail::plogp(p);
    } else {
      std::unordered_map<std::size_t, double> marginal;
      for (std::size_t e = 0; e < n; ++e) marginal[key_of(e)] += probs_[e];
      for (const auto& [k, p] : marginal) h -= detail::plogp(p);
    }
    return std::max(h, 0.0);
  }

  const JointPMF* pmf_;
  std::vector<double> probs_;          // nonzero entries only
  std::vector<std::uint32_t> coords_;  // rank coordinates per nonzero entry
  std::unordered_map<Mask, double> cache_;
};

// ---------------------------------------------------------------------------
// Free-function surface

/// Sums out every variable not in `keep`. Variable order follows the input.
inline JointPMF marginalize(const JointPMF& pmf, const VarSet& keep) {
  if (keep.empty()) throw std::invalid_argument("marginalize: keep set is empty");
  std::vector<bool> kept(pmf.rank(), false);
  for (const auto& n : keep) kept[pmf.index_of(n)] = true;

  std::vector<Variable> vars;
  std::vector<std::size_t> out_stride(pmf.rank(), 0);
  for (std::size_t v = 0; v < pmf.rank(); ++v) {
    if (kept[v]) vars.push_back(pmf.variables()[v]);
  }
  std::size_t stride = 1;
  for (std::size_t v = pmf.rank(); v-- > 0;) {
    if (kept[v]) {
      out_stride[v] = stride;
      stride *= pmf.dim(v);
    }
  }
  std::vector<double> out(stride, 0.0);
  for (std::size_t flat = 0; flat < pmf.size(); ++flat) {
    const double p = pmf.table()[flat];
    if (p == 0.0) continue;
    std::size_t key = 0;
    for (std::size_t v = 0; v < pmf.rank(); ++v) {
      if (kept[v]) key += pmf.coord(flat, v) * out_stride[v];
    }
    out[key] += p;
  }
  const double sum = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& p : out) p /= sum;
  return JointPMF(std::move(vars), std::move(out));
}

inline double entropy(const JointPMF& pmf, const VarSet& vars) {
  if (vars.empty()) throw std::invalid_argument("entropy: variable set is empty");
  EntropyCalculator calc(pmf);
  return calc.entropy(vars);
}

/// H(A | C).
inline double conditional_entropy(const JointPMF& pmf, const VarSet& a, const VarSet& given) {
  EntropyCalculator calc(pmf);
  VarSet both = a;
  both.insert(both.end(), given.begin(), given.end());
  return std::max(calc.entropy(both) - calc.entropy(given), 0.0);
}

inline double conditional_mutual_information(const JointPMF& pmf, const VarSet& a, const VarSet& b,
                                             const VarSet& c = {}) {
  EntropyCalculator calc(pmf);
  return calc.conditional_mutual_information(a, b, c);
}

inline double mutual_information(const JointPMF& pmf, const VarSet& a, const VarSet& b) {
  return conditional_mutual_information(pmf, a, b, {});
}

struct MarkovCheck {
  bool holds = false;
  double max_violation = 0.0;  // bits
};

/// Tests A1 - A2 - ... - Ak: for every interior link i, the past
/// A1..A(i-1) and the future A(i+1)..Ak are conditionally independent given Ai.
inline MarkovCheck is_markov_chain(const JointPMF& pmf, const std::vector<VarSet>& chain, double tol = 1e-9) {
  if (chain.size() < 3) throw std::invalid_argument("Markov chain needs at least three links");
  std::unordered_set<std::string> seen;
  for (const auto& link : chain) {
    if (link.empty()) throw std::invalid_argument("Markov chain link is empty");
    for (const auto& n : link) {
      pmf.index_of(n);
      if (!seen.insert(n).second) throw std::invalid_argument("variable '" + n + "' appears in two links");
    }
  }
  EntropyCalculator calc(pmf);
  MarkovCheck out{true, 0.0};
  for (std::size_t mid = 1; mid + 1 < chain.size(); ++mid) {
    VarSet past, future;
    for (std::size_t i = 0; i < mid; ++i) past.insert(past.end(), chain[i].begin(), chain[i].end());
    for (std::size_t i = mid + 1; i < chain.size(); ++i) future.insert(future.end(), chain[i].begin(), chain[i].end());
    const double v = calc.conditional_mutual_information(past, future, chain[mid]);
    out.max_violation = std::max(out.max_violation, v);
  }
  out.holds = out.max_violation <= tol;
  return out;
}

}  // namespace keyregion
