#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "raman/config.hpp"
#include "raman/errors.hpp"
#include "raman/oracle.hpp"
#include "raman/output.hpp"
#include "raman/sweeps.hpp"

namespace fs = std::filesystem;
using namespace raman;

namespace {

struct Options {
  std::string config;
  std::string preset;
  std::string out = ".";
  std::string format;
  std::string grid;
  std::string phi;
  std::vector<std::string> specs;
  bool force = false;
  long long seed = 0;  // accepted for RunConfig parity; every subcommand is deterministic
  std::string figure;
  std::string cutoffs;
  std::optional<double> leak_tol;
};

void add_common(CLI::App* sc, Options& o) {
  sc->add_option("--config", o.config, "YAML run configuration");
  sc->add_option("--preset", o.preset, "stimulated | spontaneous | partial_spontaneous | desk");
  sc->add_option("--out", o.out, "Output directory (created if absent)");
  sc->add_option("--format", o.format, "csv | json");
  sc->add_option("--grid", o.grid, "gt grid start:stop:points");
  sc->add_option("--phi", o.phi, "Comma-separated phases (numbers, pi, pi/2, ...)");
  sc->add_option("--spec", o.specs, "Witness spec criterion:modes:n,m (repeatable, or ';'-separated)");
  sc->add_flag("--force", o.force, "Overwrite existing output files");
  sc->add_option("--seed", o.seed, "Seed for randomized points (currently unused)");
}

RunPlan make_plan(const Options& o, bool oracle) {
  RunPlan plan = o.config.empty() ? RunPlan{} : load_config(o.config);
  if (!o.preset.empty()) {
    const Preset p = parse_preset(o.preset);
    (oracle ? plan.oracle.scenario.preset : plan.sweep.scenario.preset) = p;
  }
  if (!o.format.empty()) plan.format = parse_format(o.format);
  if (!o.grid.empty()) plan.sweep.grid = TimeGrid::parse(o.grid);
  if (!o.phi.empty()) plan.sweep.phases = parse_phase_list(o.phi);
  if (!o.specs.empty()) {
    std::vector<WitnessSpec> specs;
    for (const auto& s : o.specs)
      for (auto& w : parse_spec_list(s)) specs.push_back(w);
    (oracle ? plan.oracle.specs : plan.sweep.specs) = specs;
    if (!oracle) {
      // Multipliers for specs no longer in the plan are dropped rather than rejected.
      std::erase_if(plan.sweep.plot_multipliers, [&](const auto& kv) {
        return std::find(specs.begin(), specs.end(), WitnessSpec::parse(kv.first)) == specs.end();
      });
    }
  }
  if (!o.cutoffs.empty()) plan.oracle.fock.cutoffs = parse_cutoffs(o.cutoffs);
  if (o.leak_tol) plan.oracle.fock.leak_tol = *o.leak_tol;
  plan.sweep.validate();
  plan.oracle.validate();
  return plan;
}

fs::path prepare_out(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw ConfigError("cannot create " + dir + ": " + ec.message(), "out");
  return p;
}

void warn_range(const RamanParams& p, double gt_max) {
  if (beyond_perturbative_range(p, gt_max / p.g))
    std::cerr << "warning: grid reaches gt = " << gt_max
              << " where g t or chi t exceeds 0.5; the second-order solution is outside its range\n";
}

void emit(const fs::path& path, const std::string& content, bool force) {
  write_atomic(path, content, force);
  std::cout << path.string() << "\n";
}

int run_sweep_cmd(const Options& o) {
  const RunPlan plan = make_plan(o, false);
  warn_range(plan.sweep.scenario.resolve().params, plan.sweep.grid.stop);
  const fs::path dir = prepare_out(o.out);
  const auto series = run_sweep(plan.sweep);
  emit(dir / ("sweep" + std::string(format_extension(plan.format))), render(series_table(series), plan.format), o.force);
  return 0;
}

int run_figure_cmd(const Options& o) {
  const RunPlan plan = make_plan(o, false);
  const FigureId id = parse_figure(o.figure);
  const TimeGrid grid = o.grid.empty() ? figure_grid() : plan.sweep.grid;
  warn_range(make_scenario(Preset::stimulated).params, grid.stop);
  const fs::path dir = prepare_out(o.out);
  const Figure fig = figure_data(id, grid);
  for (const auto& panel : fig.panels)
    emit(dir / (panel.file_stem + std::string(format_extension(plan.format))),
         render(panel_table(panel), plan.format), o.force);
  emit(dir / (std::string(figure_name(id)) + ".plot"), fig.plot_script, o.force);
  return 0;
}

int run_oracle_cmd(const Options& o) {
  const RunPlan plan = make_plan(o, true);
  const auto& v = plan.oracle;
  const Scenario sc = v.scenario.resolve();
  const auto specs = v.specs.empty() ? validation_specs() : v.specs;
  EvolveOptions opt;
  opt.tol = v.tol;
  opt.krylov_dim = v.krylov_dim;
  const fs::path dir = prepare_out(o.out);
  const ValidationReport rep = oracle_validate(sc.params, sc.amps, v.fock, v.times, specs, opt);
  const auto& d = rep.diagnostics;
  std::cerr << "norm drift " << d.max_norm_drift << ", N_abd drift " << d.max_rel_drift_abd << ", N_acd drift "
            << d.max_rel_drift_acd << ", energy drift " << d.max_rel_drift_energy << ", top-level probability "
            << d.max_top_level << "\n";
  if (!d.truncation_ok()) {
    const auto& m = d.max_top_level_mode;
    std::cerr << "top level per mode a,b,c,d: " << m[0] << ", " << m[1] << ", " << m[2] << ", " << m[3] << "\n";
    const auto c = d.suggested_cutoffs(v.fock.cutoffs);
    std::cerr << "suggestion: --cutoffs " << c[0] << "," << c[1] << "," << c[2] << "," << c[3] << "\n";
  }
  d.require_valid();
  for (const auto& s : specs)
    std::cerr << s.to_string() << ": estimated order " << rep.order(s) << "\n";
  emit(dir / ("oracle_validate" + std::string(format_extension(plan.format))),
       render(validation_table(rep), plan.format), o.force);
  return 0;
}

int run_coeff_cmd(const Options& o) {
  const RunPlan plan = make_plan(o, false);
  const Scenario sc = plan.sweep.scenario.resolve();
  const fs::path dir = prepare_out(o.out);
  emit(dir / ("coefficients" + std::string(format_extension(plan.format))),
       render(coefficient_table(sc.params, plan.sweep.grid.values()), plan.format), o.force);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher-order entanglement witnesses for Raman processes"};
  app.require_subcommand(1);
  Options o;

  auto* sweep = app.add_subcommand("sweep", "Closed-form witness series over a gt grid");
  add_common(sweep, o);
  auto* figure = app.add_subcommand("figure", "Figure data and a gnuplot script");
  add_common(figure, o);
  figure->add_option("--id", o.figure, "fig2 | fig3 | fig4 | fig5")->required();
  auto* oracle = app.add_subcommand("oracle-validate", "Compare closed forms with the truncated-Fock oracle");
  add_common(oracle, o);
  oracle->add_option("--cutoffs", o.cutoffs, "Fock cutoffs a,b,c,d");
  oracle->add_option("--leak-tol", o.leak_tol, "Truncation monitor threshold");
  auto* coeff = app.add_subcommand("coeff-dump", "Dump the coefficient set over the grid");
  add_common(coeff, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    apply_thread_env();
    if (sweep->parsed()) return run_sweep_cmd(o);
    if (figure->parsed()) return run_figure_cmd(o);
    if (oracle->parsed()) return run_oracle_cmd(o);
    if (coeff->parsed()) return run_coeff_cmd(o);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const IncompleteInputError& e) {
    std::cerr << "incomplete input: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
