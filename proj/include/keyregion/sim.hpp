#pragma once

// Finite-blocklength Monte Carlo of the pre-generated keys scheme: one block,
// primary keys only. Random wiretap codebooks, transmission over the channel,
// L-infinity type decoding, and plug-in leakage diagnostics.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "keyregion/channel.hpp"
#include "keyregion/prob.hpp"
#include "keyregion/rng.hpp"

namespace keyregion {

/// Key pairs in codebook order.
enum KeyPair : std::size_t { k12 = 0, k21 = 1, k13 = 2, k23 = 3 };
inline constexpr std::array<const char*, 4> kKeyPairNames = {"12", "21", "13", "23"};

inline constexpr std::uint64_t kDefaultSimBudget = 500'000'000;
inline constexpr std::size_t kHashBuckets = 4096;
inline constexpr double kCodebookChiSquareAlpha = 1e-6;
inline constexpr double kLeakageBiasQuantile = 0.999;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How an observation sequence is reduced to a finite bucket for leakage.
///   ml_estimate: the eavesdropper's maximum-likelihood key given the codebook
///   hash:        a 4096-way hash of the raw observation sequence
enum class LeakageBucketing { ml_estimate, hash };

struct SimConfig {
  SimConfig(Gdmmac ch, AuxDesign d) : channel(std::move(ch)), design(std::move(d)) {}

  Gdmmac channel;
  AuxDesign design;
  std::size_t n = 8;
  std::array<double, 4> key_rates{};
  std::array<double, 4> randomization_rates{};
  std::optional<double> epsilon_typ;  // unset: 1.2 / sqrt(n)
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultSimBudget;
  std::size_t threads = 1;
  LeakageBucketing bucketing = LeakageBucketing::ml_estimate;

  void validate() const {
    if (n == 0) throw std::invalid_argument("n must be at least 1");
    if (trials == 0) throw std::invalid_argument("trials must be at least 1");
    if (epsilon_typ && (!(*epsilon_typ >= 0.0) || !std::isfinite(*epsilon_typ)))
      throw std::invalid_argument("epsilon_typ must be finite and >= 0");
    for (std::size_t j = 0; j < 4; ++j) {
      if (!(key_rates[j] >= 0.0) || !std::isfinite(key_rates[j]))
        throw std::invalid_argument(std::string("key rate r") + kKeyPairNames[j] + " must be finite and >= 0");
      if (!(randomization_rates[j] >= 0.0) || !std::isfinite(randomization_rates[j]))
        throw std::invalid_argument(std::string("randomization rate r") + kKeyPairNames[j] + "' must be finite and >= 0");
    }
    if (design.has_t_layer()) throw std::invalid_argument("simulation covers the S layer only; drop the T layer");
    design.check_compatible(channel);
  }

  double effective_epsilon() const {
    return epsilon_typ ? *epsilon_typ : 1.2 / std::sqrt(static_cast<double>(n));
  }
};

/// floor(2^(n r)), at least 1.
inline std::size_t codebook_count(std::size_t n, double rate) {
  const double exponent = static_cast<double>(n) * rate;
  if (exponent > 40.0) {
    throw BudgetExceeded("codebook of 2^" + std::to_string(exponent) + " entries exceeds enumeration limits");
  }
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::exp2(exponent) + 1e-9)));
}

struct PairCodebook {
  std::size_t keys = 1;
  std::size_t randomizers = 1;
  std::size_t n = 0;
  std::vector<std::uint32_t> symbols;  // ((key * randomizers) + rand) * n + t

  std::size_t size() const noexcept { return keys * randomizers; }
  std::span<const std::uint32_t> word(std::size_t index) const { return {symbols.data() + index * n, n}; }
  std::span<const std::uint32_t> word(std::size_t key, std::size_t rand) const { return word(key * randomizers + rand); }
};

struct Codebook {
  std::array<PairCodebook, 4> books;
};

inline const Distribution& aux_marginal(const AuxDesign& d, std::size_t pair) {
  switch (pair) {
    case k12: return d.s12;
    case k21: return d.s21;
    case k13: return d.s13;
    default: return d.s23;
  }
}

/// Work estimate in symbol-operations; compared against the budget.
inline double estimated_cost(const SimConfig& c) {
  std::array<double, 4> size{};
  for (std::size_t j = 0; j < 4; ++j) {
    size[j] = static_cast<double>(codebook_count(c.n, c.key_rates[j])) *
              static_cast<double>(codebook_count(c.n, c.randomization_rates[j]));
  }
  const double n = static_cast<double>(c.n);
  const double per_trial = n * (size[k21] + size[k12] + size[k13] * size[k23] + size[k12] * size[k21] + size[k13] +
                                size[k23]);
  return static_cast<double>(c.trials) * per_trial + n * (size[0] + size[1] + size[2] + size[3]);
}

inline void check_budget(const SimConfig& c) {
  const double cost = estimated_cost(c);
  if (cost > static_cast<double>(c.budget)) {
    throw BudgetExceeded("estimated cost " + std::to_string(static_cast<long double>(cost)) + " exceeds budget " +
                         std::to_string(c.budget));
  }
}

namespace detail {

/// Pearson goodness of fit of pooled codebook symbols against p(s).
inline void chi_square_sanity(const PairCodebook& book, const Distribution& dist, const char* pair) {
  std::vector<double> counts(dist.size(), 0.0);
  for (std::uint32_t s : book.symbols) counts[s] += 1.0;
  const double total = static_cast<double>(book.symbols.size());
  double stat = 0.0;
  int df = -1;
  for (std::size_t s = 0; s < dist.size(); ++s) {
    if (dist.probs[s] <= 0.0) {
      if (counts[s] > 0.0) throw std::runtime_error(std::string("codebook S") + pair + " holds a zero-probability symbol");
      continue;
    }
    ++df;
    const double expected = total * dist.probs[s];
    stat += (counts[s] - expected) * (counts[s] - expected) / expected;
  }
  if (df <= 0) return;
  const double p = boost::math::cdf(boost::math::complement(boost::math::chi_squared(df), stat));
  if (p < kCodebookChiSquareAlpha) {
    throw std::runtime_error(std::string("codebook S") + pair + " fails the chi-square sanity check (p = " +
                             std::to_string(p) + ")");
  }
}

}  // namespace detail

inline Codebook generate_codebooks(const SimConfig& config) {
  config.validate();
  check_budget(config);
  Codebook cb;
  for (std::size_t j = 0; j < 4; ++j) {
    PairCodebook& b = cb.books[j];
    b.keys = codebook_count(config.n, config.key_rates[j]);
    b.randomizers = codebook_count(config.n, config.randomization_rates[j]);
    b.n = config.n;
    b.symbols.resize(b.size() * config.n);
    const Distribution& dist = aux_marginal(config.design, j);
    Engine g = stream_engine(config.seed, Stream::codebook, j);
    for (auto& s : b.symbols) s = static_cast<std::uint32_t>(sample_index(g, dist.probs));
    detail::chi_square_sanity(b, dist, kKeyPairNames[j]);
  }
  return cb;
}

struct LeakageSample {
  std::uint64_t key = 0;
  std::uint64_t bucket = 0;
};

struct LeakageEstimate {
  double bits = 0.0;
  bool degenerate = false;
  /// 0.999 quantile of the plug-in estimate under independence, from the
  /// chi-square law of the G statistic.
  double bias_bound = 0.0;
  std::size_t samples = 0;
};

inline LeakageEstimate plug_in_leakage(std::span<const LeakageSample> samples) {
  if (samples.size() < 2) throw std::invalid_argument("plug_in_leakage needs at least 2 samples");
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> joint;
  std::map<std::uint64_t, double> keys, buckets;
  for (const auto& s : samples) {
    joint[{s.key, s.bucket}] += 1.0;
    keys[s.key] += 1.0;
    buckets[s.bucket] += 1.0;
  }
  LeakageEstimate est;
  est.samples = samples.size();
  const double m = static_cast<double>(samples.size());
  const double df = static_cast<double>(keys.size() - 1) * static_cast<double>(buckets.size() - 1);
  if (df > 0.0) {
    est.bias_bound = boost::math::quantile(boost::math::chi_squared(df), kLeakageBiasQuantile) / (2.0 * m * std::log(2.0));
  }
  if (keys.size() < 2) {
    est.degenerate = true;
    return est;
  }
  double mi = 0.0;
  for (const auto& [kb, c] : joint) mi += c / m * std::log2(c * m / (keys[kb.first] * buckets[kb.second]));
  est.bits = std::max(mi, 0.0);
  return est;
}

struct TrialOutcome {
  std::array<std::size_t, 4> key{};
  std::array<std::size_t, 4> rand{};
  std::array<bool, 3> decoded{};  // users 1, 2, 3
  /// (key, bucket) for K12K21 against User 3, K13 against User 2, K23 against User 1.
  std::array<LeakageSample, 3> leakage{};
};

struct SimulationReport {
  std::array<double, 3> errors{};
  std::array<LeakageEstimate, 3> leakage{};
  double leakage_bias_bound = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double runtime_ms = 0.0;
};

/// Precomputed state shared by all trials of one configuration.
class Simulation {
 public:
  Simulation(SimConfig config, Codebook codebook) : cfg_(std::move(config)), cb_(std::move(codebook)) {
    cfg_.validate();
    eps_ = cfg_.effective_epsilon();
    for (std::size_t j = 0; j < 4; ++j) {
      if (cb_.books[j].n != cfg_.n) throw std::invalid_argument("codebook blocklength does not match config");
    }
    const JointPMF joint = induce_joint(cfg_.channel, cfg_.design);
    using namespace names;
    target_u1_ = ordered_table(joint, {X1, Y1, S21}, dims_u1_);
    target_u2_ = ordered_table(joint, {X2, Y2, S12}, dims_u2_);
    target_u3_ = ordered_table(joint, {Y3, S13, S23}, dims_u3_);
  }

  const SimConfig& config() const noexcept { return cfg_; }
  const Codebook& codebook() const noexcept { return cb_; }

  TrialOutcome run_trial(std::size_t trial) const {
    const Gdmmac& ch = cfg_.channel;
    const AuxDesign& d = cfg_.design;
    const std::size_t n = cfg_.n;
    TrialOutcome out;

    Engine pick = stream_engine(cfg_.seed, Stream::trial, trial);
    std::array<std::span<const std::uint32_t>, 4> s;
    for (std::size_t j = 0; j < 4; ++j) {
      const PairCodebook& b = cb_.books[j];
      out.key[j] = uniform_index(pick, b.keys);
      out.rand[j] = uniform_index(pick, b.randomizers);
      s[j] = b.word(out.key[j], out.rand[j]);
    }

    Engine noise = stream_engine(cfg_.seed, Stream::noise, trial);
    const std::size_t ny2 = ch.y2().size(), ny3 = ch.y3().size();
    std::vector<std::uint32_t> x1(n), x2(n), y1(n), y2(n), y3(n);
    for (std::size_t t = 0; t < n; ++t) {
      x1[t] = static_cast<std::uint32_t>(sample_index(noise, d.x1.row({s[k12][t], s[k13][t]})));
      x2[t] = static_cast<std::uint32_t>(sample_index(noise, d.x2.row({s[k21][t], s[k23][t]})));
      const std::size_t y = sample_index(noise, ch.outputs(x1[t], x2[t]));
      y3[t] = static_cast<std::uint32_t>(y % ny3);
      y2[t] = static_cast<std::uint32_t>((y / ny3) % ny2);
      y1[t] = static_cast<std::uint32_t>(y / (ny3 * ny2));
    }

    // User 1 recovers S21 from (x1, y1); User 2 recovers S12 from (x2, y2).
    out.decoded[0] = decode_single(cb_.books[k21], x1, y1, target_u1_, dims_u1_, out.key[k21]);
    out.decoded[1] = decode_single(cb_.books[k12], x2, y2, target_u2_, dims_u2_, out.key[k12]);
    out.decoded[2] = decode_pair(y3, out.key[k13], out.key[k23]);

    out.leakage[0].key = out.key[k12] * cb_.books[k21].keys + out.key[k21];
    out.leakage[1].key = out.key[k13];
    out.leakage[2].key = out.key[k23];
    if (cfg_.bucketing == LeakageBucketing::hash) {
      out.leakage[0].bucket = hash_bucket({&y3});
      out.leakage[1].bucket = hash_bucket({&x2, &y2});
      out.leakage[2].bucket = hash_bucket({&x1, &y1});
    } else {
      out.leakage[0].bucket = ml_pair_12_21(y3, s[k13], s[k23]);
      out.leakage[1].bucket = ml_single(cb_.books[k13], [&](std::size_t t, std::uint32_t c) {
        const auto px1 = d.x1.row({s[k12][t], c});
        double v = 0.0;
        for (std::size_t a = 0; a < px1.size(); ++a) v += px1[a] * ch.y2_given(a, x2[t], y2[t]);
        return v;
      });
      out.leakage[2].bucket = ml_single(cb_.books[k23], [&](std::size_t t, std::uint32_t c) {
        const auto px2 = d.x2.row({s[k21][t], c});
        double v = 0.0;
        for (std::size_t b = 0; b < px2.size(); ++b) v += px2[b] * ch.y1_given(x1[t], b, y1[t]);
        return v;
      });
    }
    return out;
  }

  /// L-infinity distance between the empirical type of the triple sequence
  /// and the target joint (dims a, b, c; c fastest). Infinite when a tuple of
  /// probability zero occurs: strong typicality forbids those outright.
  static double type_distance(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                              std::span<const std::uint32_t> c, std::span<const double> target,
                              const std::array<std::size_t, 3>& dims, std::vector<double>& scratch) {
    scratch.assign(target.size(), 0.0);
    const double inc = 1.0 / static_cast<double>(a.size());
    for (std::size_t t = 0; t < a.size(); ++t) {
      const std::size_t cell = (a[t] * dims[1] + b[t]) * dims[2] + c[t];
      if (target[cell] <= 0.0) return std::numeric_limits<double>::infinity();
      scratch[cell] += inc;
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) worst = std::max(worst, std::abs(scratch[i] - target[i]));
    return worst;
  }

 private:
  static std::vector<double> ordered_table(const JointPMF& joint, const VarSet& order, std::array<std::size_t, 3>& dims) {
    const JointPMF m = marginalize(joint, order);
    std::array<std::size_t, 3> pos{};
    for (std::size_t i = 0; i < 3; ++i) {
      pos[i] = m.index_of(order[i]);
      dims[i] = m.dim(pos[i]);
    }
    std::vector<double> out(m.size(), 0.0);
    for (std::size_t f = 0; f < m.size(); ++f) {
      out[(m.coord(f, pos[0]) * dims[1] + m.coord(f, pos[1])) * dims[2] + m.coord(f, pos[2])] = m.table()[f];
    }
    return out;
  }

  bool decode_single(const PairCodebook& book, std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                     const std::vector<double>& target, const std::array<std::size_t, 3>& dims,
                     std::size_t true_key) const {
    std::vector<double> scratch;
    std::size_t matches = 0, hit = 0;
    for (std::size_t i = 0; i < book.size() && matches < 2; ++i) {
      if (type_distance(a, b, book.word(i), target, dims, scratch) <= eps_) {
        ++matches;
        hit = i;
      }
    }
    return matches == 1 && hit / book.randomizers == true_key;
  }

  bool decode_pair(std::span<const std::uint32_t> y3, std::size_t key13, std::size_t key23) const {
    const PairCodebook& b13 = cb_.books[k13];
    const PairCodebook& b23 = cb_.books[k23];
    std::vector<double> scratch;
    std::size_t matches = 0, hit13 = 0, hit23 = 0;
    for (std::size_t i = 0; i < b13.size() && matches < 2; ++i) {
      for (std::size_t k = 0; k < b23.size() && matches < 2; ++k) {
        if (type_distance(y3, b13.word(i), b23.word(k), target_u3_, dims_u3_, scratch) <= eps_) {
          ++matches;
          hit13 = i;
          hit23 = k;
        }
      }
    }
    return matches == 1 && hit13 / b13.randomizers == key13 && hit23 / b23.randomizers == key23;
  }

  /// Argmax over keys of the posterior summed over randomization indices.
  /// `factor(t, symbol)` is the per-letter likelihood of a candidate symbol.
  template <class Factor>
  static std::uint64_t ml_single(const PairCodebook& book, Factor factor) {
    if (book.keys == 1) return 0;
    std::vector<double> loglik(book.size());
    for (std::size_t i = 0; i < book.size(); ++i) {
      const auto w = book.word(i);
      double l = 0.0;
      for (std::size_t t = 0; t < w.size(); ++t) l += std::log(factor(t, w[t]));
      loglik[i] = l;
    }
    return argmax_key(loglik, book.keys, book.randomizers);
  }

  std::uint64_t ml_pair_12_21(std::span<const std::uint32_t> y3, std::span<const std::uint32_t> s13,
                              std::span<const std::uint32_t> s23) const {
    const PairCodebook& b12 = cb_.books[k12];
    const PairCodebook& b21 = cb_.books[k21];
    if (b12.keys * b21.keys == 1) return 0;
    const AuxDesign& d = cfg_.design;
    const Gdmmac& ch = cfg_.channel;
    const std::size_t n12 = d.s12.size(), n21 = d.s21.size();
    // letter[t][a][b] = P(y3_t | s12 = a, s21 = b, s13_t, s23_t)
    std::vector<double> letter(cfg_.n * n12 * n21, 0.0);
    for (std::size_t t = 0; t < cfg_.n; ++t)
      for (std::size_t a = 0; a < n12; ++a)
        for (std::size_t b = 0; b < n21; ++b) {
          const auto px1 = d.x1.row({a, static_cast<std::size_t>(s13[t])});
          const auto px2 = d.x2.row({b, static_cast<std::size_t>(s23[t])});
          double v = 0.0;
          for (std::size_t u = 0; u < px1.size(); ++u)
            for (std::size_t w = 0; w < px2.size(); ++w) v += px1[u] * px2[w] * ch.y3_given(u, w, y3[t]);
          letter[(t * n12 + a) * n21 + b] = std::log(v);
        }
    // Candidates ordered by (k12, k21, m12, m21) so keys group contiguously.
    const std::size_t keys = b12.keys * b21.keys, rands = b12.randomizers * b21.randomizers;
    std::vector<double> loglik(keys * rands);
    for (std::size_t i = 0; i < b12.size(); ++i) {
      const auto w12 = b12.word(i);
      const std::size_t key12 = i / b12.randomizers, r12 = i % b12.randomizers;
      for (std::size_t k = 0; k < b21.size(); ++k) {
        const auto w21 = b21.word(k);
        const std::size_t key21 = k / b21.randomizers, r21 = k % b21.randomizers;
        double l = 0.0;
        for (std::size_t t = 0; t < cfg_.n; ++t) l += letter[(t * n12 + w12[t]) * n21 + w21[t]];
        loglik[(key12 * b21.keys + key21) * rands + r12 * b21.randomizers + r21] = l;
      }
    }
    return argmax_key(loglik, keys, rands);
  }

  static std::uint64_t argmax_key(const std::vector<double>& loglik, std::size_t keys, std::size_t rands) {
    const double top = *std::max_element(loglik.begin(), loglik.end());
    if (!std::isfinite(top)) return 0;
    std::uint64_t best = 0;
    double best_mass = -1.0;
    for (std::size_t k = 0; k < keys; ++k) {
      double mass = 0.0;
      for (std::size_t r = 0; r < rands; ++r) mass += std::exp(loglik[k * rands + r] - top);
      if (mass > best_mass) {
        best_mass = mass;
        best = k;
      }
    }
    return best;
  }

  static std::uint64_t hash_bucket(std::initializer_list<const std::vector<std::uint32_t>*> seqs) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (const auto* s : seqs) {
      for (std::uint32_t v : *s) {
        h ^= v + 1;
        h *= 1099511628211ULL;
      }
      h ^= 0xff;
      h *= 1099511628211ULL;
    }
    return h % kHashBuckets;
  }

  SimConfig cfg_;
  Codebook cb_;
  double eps_ = 0.0;
  std::vector<double> target_u1_, target_u2_, target_u3_;
  std::array<std::size_t, 3> dims_u1_{}, dims_u2_{}, dims_u3_{};
};

/// Per-pair decoding ceilings on r + r' and secrecy floors on r' for a design.
struct WiretapThresholds {
  std::array<double, 4> decoding{};  // I(S12;X2,Y2), I(S21;X1,Y1), I(S13;Y3|S23), I(S23;Y3|S13)
  double decoding_sum_3 = 0.0;       // I(S13,S23;Y3)
  std::array<double, 4> secrecy{};   // I(S12;Y3,S13,S23), I(S21;Y3,S13,S23), I(S13;X2,Y2,S12), I(S23;X1,Y1,S21)
};

inline WiretapThresholds wiretap_thresholds(const Gdmmac& ch, const AuxDesign& d) {
  using namespace names;
  const JointPMF joint = induce_joint(ch, d);
  EntropyCalculator c(joint);
  WiretapThresholds w;
  w.decoding = {c.conditional_mutual_information({S12}, {X2, Y2}), c.conditional_mutual_information({S21}, {X1, Y1}),
                c.conditional_mutual_information({S13}, {Y3}, {S23}),
                c.conditional_mutual_information({S23}, {Y3}, {S13})};
  w.decoding_sum_3 = c.conditional_mutual_information({S13, S23}, {Y3});
  w.secrecy = {c.conditional_mutual_information({S12}, {Y3, S13, S23}),
               c.conditional_mutual_information({S21}, {Y3, S13, S23}),
               c.conditional_mutual_information({S13}, {X2, Y2, S12}),
               c.conditional_mutual_information({S23}, {X1, Y1, S21})};
  return w;
}

inline TrialOutcome run_trial(const Codebook& codebook, const SimConfig& config, std::size_t trial_index) {
  return Simulation(config, codebook).run_trial(trial_index);
}

/// Runs body(i) for i in [0, count) on up to `threads` workers, strided.
inline void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += threads) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

inline SimulationReport simulate(const SimConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Simulation sim(config, generate_codebooks(config));

  std::vector<TrialOutcome> outcomes(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t t) { outcomes[t] = sim.run_trial(t); });

  SimulationReport report;
  report.trials = config.trials;
  report.seed = config.seed;
  std::array<std::size_t, 3> failures{};
  std::array<std::vector<LeakageSample>, 3> samples;
  for (const auto& o : outcomes) {
    for (std::size_t u = 0; u < 3; ++u) {
      failures[u] += o.decoded[u] ? 0 : 1;
      samples[u].push_back(o.leakage[u]);
    }
  }
  for (std::size_t u = 0; u < 3; ++u) {
    report.errors[u] = static_cast<double>(failures[u]) / static_cast<double>(config.trials);
    if (config.trials >= 2) {
      report.leakage[u] = plug_in_leakage(samples[u]);
    } else {
      report.leakage[u].degenerate = true;
      report.leakage[u].samples = config.trials;
    }
    report.leakage_bias_bound = std::max(report.leakage_bias_bound, report.leakage[u].bias_bound);
  }
  report.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace keyregion
