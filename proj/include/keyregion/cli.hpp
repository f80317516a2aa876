#pragma once

// Subcommand implementations behind tools/keyregion. Each returns a process
// exit code: 0 success, 1 runtime/budget/invariant failure, 2 usage/config.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "keyregion/check.hpp"
#include "keyregion/closed_form.hpp"
#include "keyregion/csv.hpp"
#include "keyregion/json_io.hpp"
#include "keyregion/regions.hpp"
#include "keyregion/sim.hpp"
#include "keyregion/version.hpp"

namespace keyregion::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr std::uint64_t kDefaultRegionBudget = 2'000'000;  // grid points

struct Options {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> grid_step;
  std::optional<std::uint64_t> budget;
  std::string figure;
  std::string params;
  unsigned threads = 1;
  /// Mutation hook for the self-check; never set from the command line.
  double check_perturbation = 0.0;
  std::ostream* out_stream = &std::cout;
  std::ostream* err_stream = &std::cerr;
};

/// Worker count: hardware concurrency capped by KEYREGION_THREADS.
inline unsigned thread_budget() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("KEYREGION_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw ConfigError("KEYREGION_THREADS must be a positive integer");
    n = std::min(n, static_cast<unsigned>(v));
  }
  return n;
}

namespace detail {

inline Json read_json_file(const std::string& path) {
  if (path.empty()) throw ConfigError("--config is required");
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

inline std::array<double, 3> parse_triple(const std::string& text) {
  std::array<double, 3> v{};
  std::stringstream ss(text);
  std::string cell;
  std::size_t i = 0;
  while (std::getline(ss, cell, ',')) {
    if (i == 3) throw ConfigError("--params takes exactly three comma-separated numbers");
    try {
      std::size_t used = 0;
      v[i] = std::stod(cell, &used);
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::logic_error&) {
      throw ConfigError("--params: '" + cell + "' is not a number");
    }
    ++i;
  }
  if (i != 3) throw ConfigError("--params takes exactly three comma-separated numbers");
  return v;
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Collects emitted files and writes manifest.json next to them.
class Run {
 public:
  Run(std::string command, const Options& o) : o_(o), dir_(o.out) {
    std::filesystem::create_directories(dir_);
    manifest_ = {{"command", std::move(command)},
                 {"tool_version", kVersion},
                 {"timestamp", utc_timestamp()},
                 {"config_path", o.config},
                 {"threads", o.threads},
                 {"outputs", Json::array()},
                 {"notes", Json::array()}};
    if (o.seed) manifest_["seed"] = *o.seed;
    if (o.grid_step) manifest_["grid_step"] = *o.grid_step;
    if (o.budget) manifest_["budget"] = *o.budget;
    if (!o.figure.empty()) manifest_["figure"] = o.figure;
    if (!o.params.empty()) manifest_["params"] = o.params;
  }

  Json& manifest() { return manifest_; }

  std::ofstream open(const std::string& name) {
    const auto path = dir_ / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
    manifest_["outputs"].push_back(name);
    return f;
  }

  void note(const std::string& text) {
    manifest_["notes"].push_back(text);
    *o_.err_stream << "note: " << text << '\n';
  }

  void finish() {
    std::ofstream f(dir_ / "manifest.json", std::ios::binary);
    f << manifest_.dump(2) << '\n';
    for (const auto& name : manifest_["outputs"]) *o_.out_stream << (dir_ / name.get<std::string>()).string() << '\n';
  }

 private:
  const Options& o_;
  std::filesystem::path dir_;
  Json manifest_;
};

inline void write_points(CsvWriter& w, const std::string& series, const std::vector<Point2>& pts) {
  for (const auto& p : pts) w.line({series, format_number(p.x), format_number(p.y)});
}

/// Corner path of the box [0, x] x [0, y].
inline std::vector<Point2> box_path(double x, double y) { return {{0.0, y}, {x, y}, {x, 0.0}}; }

inline void check_point_budget(const std::vector<GridAxis>& axes, std::uint64_t budget) {
  double points = 1.0;
  for (const auto& a : axes) points *= static_cast<double>(a.values().size());
  if (points > static_cast<double>(budget)) {
    throw BudgetExceeded("grid of " + std::to_string(static_cast<std::uint64_t>(points)) + " points exceeds budget " +
                         std::to_string(budget));
  }
}

inline std::vector<RateTriple> feasible_vertices(const std::vector<SweepPoint>& pts) {
  std::vector<RateTriple> out;
  for (const auto& p : pts) {
    if (!p.eval.feasible) continue;
    for (const auto& v : maximal_vertices(p.eval)) out.push_back(v);
  }
  return out;
}

inline std::vector<GridAxis> full_axes(const std::vector<std::string>& names, double step) {
  std::vector<GridAxis> axes;
  for (const auto& n : names) axes.push_back({n, 0.0, 0.5, step});
  return axes;
}

template <class F>
Gdmmac guarded_channel(F&& f) {
  return json_detail::guarded("params", std::forward<F>(f));
}

inline void emit_figure(Run& run, const Options& o, const std::string& id, std::array<double, 3> p) {
  const std::uint64_t budget = o.budget.value_or(kDefaultRegionBudget);
  Json& m = run.manifest();
  m["figure"] = id;
  m["figure_params"] = {{"p1", p[0]}, {"p2", p[1]}, {"p3", p[2]}};

  if (id == "fig6") {
    const double step = o.grid_step.value_or(0.01);
    m["grid_step"] = step;
    const Gdmmac ch = guarded_channel([&] { return build_binary_sum_gdmmac(p[0], p[1], p[2]); });
    const auto axes = full_axes(design_family_params("example2"), step);
    check_point_budget(axes, budget);
    const auto pts = sweep(ch, design_family("example2"), axes, o.threads);
    const auto inner = pareto_project(feasible_vertices(pts), RateAxis::r12, RateAxis::r23);

    const RateTriple r12_corner = example2_inner({0.5, 0.5, p[0], p[1], p[2]});
    const RateTriple r23_corner = example2_inner({0.0, 0.0, p[0], p[1], p[2]});
    const double outer_r12 = 1.0 - binary_entropy(p[1]);
    const double outer_r23 = binary_entropy(p[0]) - binary_entropy(p[2]);
    if (!Example2Params{0, 0, p[0], p[1], p[2]}.ordered()) {
      run.note("p2 <= p3 <= p1 does not hold; the outer series evaluates the bound formulas outside the regime "
               "where they are proven");
    }
    std::ofstream f = run.open("fig6_R12_R23.csv");
    CsvWriter w(f);
    w.header({"series", "R12", "R23"});
    write_points(w, "inner", inner);
    write_points(w, "outer", box_path(outer_r12, outer_r23));
    write_points(w, "timeshare", {{0.0, r23_corner.r23}, {r12_corner.r12, 0.0}});
    return;
  }

  const double step = o.grid_step.value_or(0.1);
  m["grid_step"] = step;
  const Gdmmac ch = guarded_channel([&] { return build_correlated_noise_gdmmac(p[0], p[1], p[2]); });
  const auto gen_axes = full_axes(design_family_params("example3"), step);
  const auto pre_axes = full_axes(design_family_params("example3_pregen"), step);
  check_point_budget(gen_axes, budget);
  const auto pregen = feasible_vertices(sweep(ch, design_family("example3_pregen"), pre_axes, o.threads));
  const auto generalized = feasible_vertices(sweep(ch, design_family("example3"), gen_axes, o.threads));
  const RateTriple outer = example3_outer(p[0], p[1], p[2]);

  const std::array<std::pair<RateAxis, RateAxis>, 3> panels = {
      std::pair{RateAxis::r12, RateAxis::r13}, std::pair{RateAxis::r12, RateAxis::r23},
      std::pair{RateAxis::r13, RateAxis::r23}};
  for (const auto& [a, b] : panels) {
    const std::string xa = to_string(a), ya = to_string(b);
    std::ofstream f = run.open(id + "_" + xa + "_" + ya + ".csv");
    CsvWriter w(f);
    w.header({"series", xa, ya});
    write_points(w, "pregen", pareto_project(pregen, a, b));
    write_points(w, "generalized", pareto_project(generalized, a, b));
    write_points(w, "outer", box_path(coordinate(outer, a), coordinate(outer, b)));
  }
}

inline std::array<double, 3> default_figure_params(const std::string& id) {
  if (id == "fig6" || id == "fig9a") return {0.09, 0.1, 0.07};
  if (id == "fig9b") return {0.01, 0.02, 0.01};
  if (id == "fig9c") return {0.03, 0.05, 0.02};
  throw ConfigError("unknown figure id '" + id + "' (expected fig6, fig9a, fig9b or fig9c)");
}

}  // namespace detail

/// Maps exceptions to exit codes and prints the message.
template <class F>
int run_guarded(const Options& o, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    *o.err_stream << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    *o.err_stream << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    *o.err_stream << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    *o.err_stream << "budget exceeded: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    *o.err_stream << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

inline int cmd_figure(const Options& o) {
  return run_guarded(o, [&] {
    if (o.figure.empty()) throw ConfigError("--figure is required");
    const auto defaults = detail::default_figure_params(o.figure);  // also validates the id
    const auto params = o.params.empty() ? defaults : detail::parse_triple(o.params);
    detail::Run run("figure", o);
    detail::emit_figure(run, o, o.figure, params);
    run.finish();
    return kExitOk;
  });
}

/// Config: {"channel": {...}, "design_family": name, "grid": [axis, ...],
/// "projections": [["R12","R23"], ...], "hull": bool, "figure": id}.
inline int cmd_region(const Options& o) {
  return run_guarded(o, [&] {
    const Json cfg = detail::read_json_file(o.config);
    const Gdmmac ch = channel_from_json(json_detail::field(cfg, "channel", ""));
    const std::string family = json_detail::string(cfg, "design_family", "");
    const auto names = design_family_params(family);

    std::vector<GridAxis> axes;
    if (cfg.contains("grid")) {
      const Json& g = cfg.at("grid");
      if (!g.is_array()) throw ConfigError("field 'grid' must be an array of axes");
      if (g.empty()) throw ConfigError("field 'grid' is empty");
      if (g.size() != names.size()) {
        throw ConfigError("field 'grid' must have one axis per parameter of '" + family + "' (" +
                          std::to_string(names.size()) + ")");
      }
      for (std::size_t i = 0; i < g.size(); ++i) {
        const std::string p = "grid[" + std::to_string(i) + "]";
        GridAxis a{json_detail::string(g[i], "name", p), json_detail::number(g[i], "lo", p),
                   json_detail::number(g[i], "hi", p), json_detail::number_or(g[i], "step", p, 0.05)};
        if (a.name != names[i]) throw ConfigError("field '" + p + ".name' must be '" + names[i] + "'");
        if (o.grid_step) a.step = *o.grid_step;
        a.values();  // validates
        axes.push_back(a);
      }
    } else {
      axes = detail::full_axes(names, o.grid_step.value_or(0.05));
    }
    detail::check_point_budget(axes, o.budget.value_or(kDefaultRegionBudget));

    std::vector<std::pair<RateAxis, RateAxis>> projections;
    auto parse_axis = [](const Json& v) {
      const std::string s = v.is_string() ? v.get<std::string>() : "";
      if (s == "R12") return RateAxis::r12;
      if (s == "R13") return RateAxis::r13;
      if (s == "R23") return RateAxis::r23;
      throw ConfigError("projection axes must be \"R12\", \"R13\" or \"R23\"");
    };
    if (cfg.contains("projections")) {
      for (const auto& pr : cfg.at("projections")) {
        if (!pr.is_array() || pr.size() != 2) throw ConfigError("each projection must be a pair of axis names");
        projections.emplace_back(parse_axis(pr[0]), parse_axis(pr[1]));
      }
    }
    const bool hull = cfg.contains("hull") && cfg.at("hull").is_boolean() && cfg.at("hull").get<bool>();

    const auto points = json_detail::guarded("grid", [&] { return sweep(ch, design_family(family), axes, o.threads); });

    detail::Run run("region", o);
    run.manifest()["config"] = cfg;
    {
      std::ofstream f = run.open("region.csv");
      CsvWriter w(f);
      std::vector<std::string> head = names;
      for (const char* c : {"bound_r12", "bound_r13", "bound_r23", "bound_r13_plus_r23", "feasible"}) head.push_back(c);
      w.header(head);
      for (const auto& p : points) {
        std::vector<std::string> row;
        for (double v : p.params) row.push_back(format_number(v));
        for (double v : {p.eval.bound_r12, p.eval.bound_r13, p.eval.bound_r23, p.eval.bound_r13_plus_r23})
          row.push_back(format_number(v));
        row.push_back(p.eval.feasible ? "1" : "0");
        w.line(row);
      }
    }
    if (!projections.empty()) {
      const auto vertices = detail::feasible_vertices(points);
      for (const auto& [a, b] : projections) {
        const std::string xa = to_string(a), ya = to_string(b);
        std::ofstream f = run.open("region_" + xa + "_" + ya + ".csv");
        CsvWriter w(f);
        w.header({"series", xa, ya});
        if (!vertices.empty()) {
          detail::write_points(w, "pareto", pareto_project(vertices, a, b));
          if (hull) detail::write_points(w, "hull", pareto_project(vertices, a, b, true));
        }
      }
    }
    const std::string figure = !o.figure.empty() ? o.figure : cfg.value("figure", std::string());
    if (!figure.empty()) {
      std::array<double, 3> p{};
      if (!o.params.empty()) {
        p = detail::parse_triple(o.params);
      } else {
        const Json& cp = json_detail::field(cfg.at("channel"), "params", "channel");
        p = {json_detail::number(cp, "p1", "channel.params"), json_detail::number(cp, "p2", "channel.params"),
             json_detail::number(cp, "p3", "channel.params")};
      }
      detail::default_figure_params(figure);
      detail::emit_figure(run, o, figure, p);
    }
    run.finish();
    return kExitOk;
  });
}

inline int cmd_simulate(const Options& o) {
  return run_guarded(o, [&] {
    const Json input = detail::read_json_file(o.config);
    SimConfig c = sim_config_from_json(input);
    if (o.seed) c.seed = *o.seed;
    if (o.budget) c.budget = *o.budget;
    c.threads = o.threads;
    const SimulationReport r = simulate(c);

    detail::Run run("simulate", o);
    run.manifest()["config"] = input;
    run.manifest()["seed"] = c.seed;
    std::ofstream f = run.open("simulation_report.json");
    f << report_to_json(r, sim_config_echo(input, c)).dump(2) << '\n';
    f.close();
    run.finish();
    return kExitOk;
  });
}

inline int cmd_check(const Options& o) {
  return run_guarded(o, [&] {
    CheckOptions co;
    co.closed_form_perturbation = o.check_perturbation;
    const bool ok = report_checks(run_checks(co), *o.out_stream);
    *o.out_stream << (ok ? "all invariants hold\n" : "invariant failures detected\n");
    return ok ? kExitOk : kExitFailure;
  });
}

}  // namespace keyregion::cli
