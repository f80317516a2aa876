// keyregion: rate-region sweeps, figure data, key-agreement simulation and
// invariant self-checks from the command line.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "keyregion/cli.hpp"

namespace cli = keyregion::cli;

int main(int argc, char** argv) {
  CLI::App app{"Pairwise secret-key rate regions over generalized multiple-access channels"};
  app.set_version_flag("--version", keyregion::kVersion);
  app.require_subcommand(1);

  cli::Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output directory")->capture_default_str();
    sub->add_option("--budget", o.budget, "Work budget (grid points, or symbol operations for simulate)");
  };

  CLI::App* region = app.add_subcommand("region", "Sweep a design family over a parameter grid");
  region->add_option("--config", o.config, "Region config JSON")->required();
  region->add_option("--grid-step", o.grid_step, "Override every axis step");
  region->add_option("--figure", o.figure, "Also emit a figure bundle (fig6, fig9a, fig9b, fig9c)");
  region->add_option("--params", o.params, "Crossovers p1,p2,p3 for the figure");
  add_common(region);

  CLI::App* figure = app.add_subcommand("figure", "Emit the data series of a figure panel");
  figure->add_option("--figure", o.figure, "fig6, fig9a, fig9b or fig9c")->required();
  figure->add_option("--params", o.params, "Crossovers p1,p2,p3 (defaults to the panel's set)");
  figure->add_option("--grid-step", o.grid_step, "Design-parameter grid step");
  add_common(figure);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo run of the pre-generated keys scheme");
  simulate->add_option("--config", o.config, "Simulation config JSON")->required();
  simulate->add_option("--seed", o.seed, "Override the config seed");
  add_common(simulate);

  CLI::App* check = app.add_subcommand("check", "Run the invariant self-checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();

  try {
    o.threads = cli::thread_budget();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kExitUsage;
  }

  if (active == region) return cli::cmd_region(o);
  if (active == figure) return cli::cmd_figure(o);
  if (active == simulate) return cli::cmd_simulate(o);
  if (active == check) return cli::cmd_check(o);
  return cli::kExitUsage;
}
