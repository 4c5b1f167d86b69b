// soliton-lab: run scenario configs or the radial / energy / derrick pipelines directly.
//
// Exit codes: 0 all report checks passed, 1 some check failed, 2 bad config or
// arguments, 3 a numerical or I/O error.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "solitonlab/config.hpp"
#include "solitonlab/errors.hpp"
#include "solitonlab/scenario.hpp"

using namespace solitonlab;

namespace {

struct Common {
  std::optional<std::string> out_dir;
  std::optional<unsigned> threads;
  std::optional<std::string> format;
  bool quiet = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--out-dir", c.out_dir, "Directory for data files and reports");
  app->add_option("--threads", c.threads, "Worker threads for grid fills and sweeps")->check(CLI::PositiveNumber);
  app->add_option("--format", c.format, "Grid file format")->check(CLI::IsMember({"csv", "bin"}));
  app->add_flag("-q,--quiet", c.quiet, "Only print failures");
}

void apply(ScenarioConfig& cfg, const Common& c) {
  if (c.out_dir) cfg.output.dir = *c.out_dir;
  if (c.threads) cfg.threads = *c.threads;
  if (c.format) cfg.output.format = parse_grid_format(*c.format);
}

// Scenario errors already carry the module message; nested causes are for library callers.
void report_error(const std::exception& e) { std::cerr << "error: " << e.what() << '\n'; }

int execute(const ScenarioConfig& cfg, const Common& c) {
  const auto rep = run_scenario(cfg);
  const std::string text = rep.to_text();
  if (!c.quiet || !rep.passed()) std::cout << text;
  std::cout << "wrote " << rep.outputs.size() + 2 << " file(s) to " << cfg.output.dir.string() << '\n';
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"soliton-lab: double-solution soliton fields, guidance and energetics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "soliton-lab " + library_version());

  Common common;

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run a scenario from a JSON config");
  run->add_option("config", config_path, "Scenario config (JSON)")->required()->check(CLI::ExistingFile);
  add_common(run, common);

  ScenarioConfig radial_cfg;
  radial_cfg.scenario = ScenarioKind::radial;
  std::vector<double> fit_window{50.0, 100.0};
  auto* radial = app.add_subcommand("radial", "Solve F'' + 2F'/r + kappa F^5 + A F = 0 and fit the tail");
  radial->add_option("--A", radial_cfg.radial.problem.A, "Linear coefficient A")->capture_default_str();
  radial->add_option("--kappa", radial_cfg.radial.problem.kappa, "Quintic coefficient")->capture_default_str();
  radial->add_option("--F0", radial_cfg.radial.problem.F0, "Central value F(0)")->capture_default_str();
  radial->add_option("--r-max", radial_cfg.radial.problem.r_max, "Outer radius")->capture_default_str();
  radial->add_option("--tol", radial_cfg.radial.problem.tol, "Integrator tolerance")->capture_default_str();
  radial->add_option("--step", radial_cfg.radial.problem.output_step, "Output spacing")->capture_default_str();
  radial->add_option("--fit-window", fit_window, "Tail-fit window lo hi")->expected(2);
  add_common(radial, common);

  ScenarioConfig energy_cfg;
  energy_cfg.scenario = ScenarioKind::energy;
  energy_cfg.params = {.g = 1.0, .r0 = 1e-3, .omega0 = 1.0, .e = 0.0};
  auto* energy = app.add_subcommand("energy", "E(R), Q(R) and E/Q against the closed forms");
  energy->add_option("--g", energy_cfg.params.g, "Charge g")->capture_default_str();
  energy->add_option("--r0", energy_cfg.params.r0, "Core radius")->capture_default_str();
  energy->add_option("--omega0", energy_cfg.params.omega0, "Rest frequency")->capture_default_str();
  energy->add_option("--radii", energy_cfg.energy.radii, "Cutoff radii");
  add_common(energy, common);

  ScenarioConfig derrick_cfg;
  derrick_cfg.scenario = ScenarioKind::derrick;
  auto* derrick = app.add_subcommand("derrick", "Constrained and unconstrained dilation scan of E_s");
  derrick->add_option("--g", derrick_cfg.params.g, "Charge g")->capture_default_str();
  derrick->add_option("--r0", derrick_cfg.params.r0, "Core radius")->capture_default_str();
  derrick->add_option("--p", derrick_cfg.derrick.p, "Nonlinearity power")->capture_default_str();
  derrick->add_option("--alphas", derrick_cfg.derrick.alphas, "Dilation factors");
  add_common(derrick, common);

  CLI11_PARSE(app, argc, argv);

  try {
    ScenarioConfig cfg;
    if (run->parsed()) {
      cfg = load_config(config_path);
    } else if (radial->parsed()) {
      radial_cfg.radial.fit_window = {fit_window[0], fit_window[1]};
      radial_cfg.radial.problem.validate();
      cfg = radial_cfg;
    } else if (energy->parsed()) {
      energy_cfg.params.validate();
      cfg = energy_cfg;
    } else {
      derrick_cfg.params.validate();
      cfg = derrick_cfg;
    }
    apply(cfg, common);
    return execute(cfg, common);
  } catch (const ConfigError& e) {
    report_error(e);
    return 2;
  } catch (const DomainError& e) {
    report_error(e);
    return 2;
  } catch (const std::exception& e) {
    report_error(e);
    return 3;
  }
}
