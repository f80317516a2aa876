#pragma once

// JSON ingestion and emission for channels, designs, joints, simulation
// configs and reports. Malformed input raises ConfigError naming the field.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "keyregion/channel.hpp"
#include "keyregion/designs.hpp"
#include "keyregion/prob.hpp"
#include "keyregion/regions.hpp"
#include "keyregion/sim.hpp"

namespace keyregion {

using Json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace json_detail {

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

inline const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ConfigError("'" + (path.empty() ? std::string("<root>") : path) + "' must be an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError("missing field '" + join(path, key) + "'");
  return *it;
}

inline double number(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_number()) throw ConfigError("field '" + join(path, key) + "' must be a number");
  return v.get<double>();
}

inline double number_or(const Json& j, const std::string& key, const std::string& path, double fallback) {
  return j.contains(key) ? number(j, key, path) : fallback;
}

inline std::uint64_t unsigned_int(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_number_unsigned()) throw ConfigError("field '" + join(path, key) + "' must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

inline std::string string(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_string()) throw ConfigError("field '" + join(path, key) + "' must be a string");
  return v.get<std::string>();
}

inline std::vector<double> numbers(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_array()) throw ConfigError("field '" + join(path, key) + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError("field '" + join(path, key) + "' must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

inline Alphabet alphabet(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_array() || v.empty()) throw ConfigError("field '" + join(path, key) + "' must be a nonempty symbol array");
  std::vector<std::string> symbols;
  for (const auto& e : v) symbols.push_back(e.is_string() ? e.get<std::string>() : e.dump());
  try {
    return Alphabet(std::move(symbols));
  } catch (const std::exception& e) {
    throw ConfigError("field '" + join(path, key) + "': " + e.what());
  }
}

/// Runs a builder, re-raising its argument errors as config errors.
template <class F>
auto guarded(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError("'" + path + "': " + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

inline Json alphabet_json(const Alphabet& a) {
  Json s = Json::array();
  for (std::size_t i = 0; i < a.size(); ++i) s.push_back(a.symbol(i));
  return s;
}

}  // namespace json_detail

// ---------------------------------------------------------------------------
// Joint PMF

inline Json joint_to_json(const JointPMF& pmf) {
  Json vars = Json::array();
  for (const auto& v : pmf.variables()) vars.push_back({{"name", v.name}, {"symbols", json_detail::alphabet_json(v.alphabet)}});
  const auto t = pmf.table();
  return {{"variables", vars}, {"table", std::vector<double>(t.begin(), t.end())}};
}

inline JointPMF joint_from_json(const Json& j, const std::string& path = "") {
  using namespace json_detail;
  const Json& vars = field(j, "variables", path);
  if (!vars.is_array()) throw ConfigError("field '" + join(path, "variables") + "' must be an array");
  std::vector<Variable> out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string p = join(path, "variables[" + std::to_string(i) + "]");
    out.push_back({string(vars[i], "name", p), alphabet(vars[i], "symbols", p)});
  }
  auto table = numbers(j, "table", path);
  return guarded(path.empty() ? "joint" : path, [&] { return JointPMF(std::move(out), std::move(table)); });
}

// ---------------------------------------------------------------------------
// Channels

inline Gdmmac channel_from_json(const Json& j, const std::string& path = "channel") {
  using namespace json_detail;
  const std::string family = string(j, "family", path);
  if (family == "custom") {
    const std::string ap = join(path, "alphabets");
    const Json& a = field(j, "alphabets", path);
    auto x1 = alphabet(a, "x1", ap), x2 = alphabet(a, "x2", ap);
    auto y1 = alphabet(a, "y1", ap), y2 = alphabet(a, "y2", ap), y3 = alphabet(a, "y3", ap);
    auto kernel = numbers(j, "kernel", path);
    return guarded(path, [&] { return Gdmmac(x1, x2, y1, y2, y3, std::move(kernel)); });
  }
  const bool erasure = family == "erasure" || family == "degraded_erasure";
  const bool binary = family == "binary_sum" || family == "degraded_binary_sum" || family == "correlated_noise";
  if (!erasure && !binary) throw ConfigError("field '" + join(path, "family") + "': unknown channel family '" + family + "'");
  const std::string pp = join(path, "params");
  const Json& p = field(j, "params", path);
  if (erasure) {
    const double p12 = number(p, "p12", pp), p21 = number(p, "p21", pp);
    const double p13 = number(p, "p13", pp), p23 = number(p, "p23", pp);
    return guarded(path, [&] {
      return family == "erasure" ? build_erasure_gdmmac(p12, p21, p13, p23)
                                 : build_degraded_erasure_gdmmac(p12, p21, p13, p23);
    });
  }
  const double p1 = number(p, "p1", pp), p2 = number(p, "p2", pp), p3 = number(p, "p3", pp);
  return guarded(path, [&] {
    if (family == "binary_sum") return build_binary_sum_gdmmac(p1, p2, p3);
    if (family == "degraded_binary_sum") return build_degraded_binary_sum_gdmmac(p1, p2, p3);
    return build_correlated_noise_gdmmac(p1, p2, p3);
  });
}

// ---------------------------------------------------------------------------
// Designs

namespace json_detail {

inline Distribution distribution(const Json& j, const std::string& key, const std::string& path) {
  const std::string p = join(path, key);
  const Json& d = field(j, key, path);
  auto a = alphabet(d, "symbols", p);
  auto probs = numbers(d, "probs", p);
  return guarded(p, [&] { return Distribution(std::move(a), std::move(probs)); });
}

inline Kernel kernel(const Json& j, const std::string& key, const std::string& path) {
  const std::string p = join(path, key);
  const Json& k = field(j, key, path);
  std::vector<std::size_t> dims;
  for (double d : numbers(k, "cond_dims", p)) {
    if (!(d >= 1.0) || d != static_cast<double>(static_cast<std::size_t>(d)))
      throw ConfigError("field '" + join(p, "cond_dims") + "' must hold positive integers");
    dims.push_back(static_cast<std::size_t>(d));
  }
  auto a = alphabet(k, "symbols", p);
  auto table = numbers(k, "table", p);
  return guarded(p, [&] { return Kernel(std::move(dims), std::move(a), std::move(table)); });
}

}  // namespace json_detail

/// Parameter names of the built-in design families, in sweep-axis order.
inline std::vector<std::string> design_family_params(const std::string& family) {
  if (family == "example1") return {};
  if (family == "example2") return {"alpha", "beta"};
  if (family == "example3") return {"alpha", "alpha_p", "alpha_pp", "beta", "beta_p"};
  if (family == "example3_pregen") return {"alpha", "alpha_p", "beta"};
  throw ConfigError("unknown design family '" + family + "'");
}

/// Built-in design family as a function of its parameter vector.
inline DesignFamily design_family(const std::string& family) {
  design_family_params(family);
  if (family == "example1") return [](std::span<const double>) { return example1_design(); };
  if (family == "example2") return [](std::span<const double> p) { return example2_design(p[0], p[1]); };
  if (family == "example3") {
    return [](std::span<const double> p) { return example3_design(p[0], p[1], p[2], p[3], p[4]); };
  }
  // Secondary layer switched off: alpha'' = beta' = 1/2.
  return [](std::span<const double> p) { return example3_design(p[0], p[1], 0.5, p[2], 0.5); };
}

inline AuxDesign design_from_json(const Json& j, const std::string& path = "design") {
  using namespace json_detail;
  const std::string family = string(j, "family", path);
  if (family == "custom") {
    AuxDesign d{distribution(j, "s12", path), distribution(j, "s13", path), distribution(j, "s21", path),
                distribution(j, "s23", path), kernel(j, "x1", path),       kernel(j, "x2", path),
                std::nullopt};
    if (j.contains("t")) {
      const std::string tp = join(path, "t");
      const Json& t = j.at("t");
      d.t = TLayer{kernel(t, "t12", tp), kernel(t, "t13", tp), kernel(t, "t21", tp), kernel(t, "t23", tp)};
    }
    return d;
  }
  const auto names = guarded(join(path, "family"), [&] { return design_family_params(family); });
  std::vector<double> values;
  if (!names.empty()) {
    const std::string pp = join(path, "params");
    const Json& p = field(j, "params", path);
    for (const auto& n : names) values.push_back(number(p, n, pp));
  }
  return guarded(path, [&] { return design_family(family)(values); });
}

// ---------------------------------------------------------------------------
// Simulation

inline SimConfig sim_config_from_json(const Json& j) {
  using namespace json_detail;
  if (!j.is_object()) throw ConfigError("simulation config must be a JSON object");
  SimConfig c{channel_from_json(field(j, "channel", ""), "channel"), design_from_json(field(j, "design", ""), "design")};
  c.n = unsigned_int(j, "n", "");
  c.trials = unsigned_int(j, "trials", "");
  if (j.contains("seed")) c.seed = unsigned_int(j, "seed", "");
  if (j.contains("budget")) c.budget = unsigned_int(j, "budget", "");
  if (j.contains("epsilon_typ")) c.epsilon_typ = number(j, "epsilon_typ", "");
  for (const char* block : {"key_rates", "randomization_rates"}) {
    if (!j.contains(block)) continue;
    auto& target = std::string(block) == "key_rates" ? c.key_rates : c.randomization_rates;
    for (std::size_t k = 0; k < 4; ++k) target[k] = number_or(j.at(block), kKeyPairNames[k], block, 0.0);
  }
  if (j.contains("bucketing")) {
    const std::string b = string(j, "bucketing", "");
    if (b == "ml_estimate") {
      c.bucketing = LeakageBucketing::ml_estimate;
    } else if (b == "hash") {
      c.bucketing = LeakageBucketing::hash;
    } else {
      throw ConfigError("field 'bucketing' must be \"ml_estimate\" or \"hash\"");
    }
  }
  guarded("simulation", [&] {
    c.validate();
    return 0;
  });
  return c;
}

/// The effective configuration: the input with defaults and overrides filled in.
inline Json sim_config_echo(const Json& input, const SimConfig& c) {
  Json echo = input;
  echo["n"] = c.n;
  echo["trials"] = c.trials;
  echo["seed"] = c.seed;
  echo["budget"] = c.budget;
  echo["epsilon_typ"] = c.effective_epsilon();
  echo["bucketing"] = c.bucketing == LeakageBucketing::hash ? "hash" : "ml_estimate";
  for (std::size_t k = 0; k < 4; ++k) {
    echo["key_rates"][kKeyPairNames[k]] = c.key_rates[k];
    echo["randomization_rates"][kKeyPairNames[k]] = c.randomization_rates[k];
  }
  return echo;
}

inline Json report_to_json(const SimulationReport& r, const Json& config_echo) {
  static constexpr const char* keys[3] = {"k12", "k13", "k23"};
  Json leak = Json::object(), degenerate = Json::object();
  for (std::size_t u = 0; u < 3; ++u) {
    leak[keys[u]] = r.leakage[u].bits;
    degenerate[keys[u]] = r.leakage[u].degenerate;
  }
  return {
      {"config_echo", config_echo},
      {"errors", {{"u1", r.errors[0]}, {"u2", r.errors[1]}, {"u3", r.errors[2]}}},
      {"leakage_bits", leak},
      {"leakage_degenerate", degenerate},
      {"leakage_bias_bound", r.leakage_bias_bound},
      {"trials", r.trials},
      {"seed", r.seed},
      {"runtime_ms", r.runtime_ms},
  };
}

}  // namespace keyregion
