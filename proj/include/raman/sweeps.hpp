#pragma once

#include <map>
#include <string>
#include <vector>

#include "raman/core.hpp"
#include "raman/fock.hpp"
#include "raman/kernels.hpp"

namespace raman {

struct TimeGrid {
  double start = 0.0;
  double stop = 0.1;
  int points = 501;

  void validate() const;  // start == 0, stop > 0, points >= 2
  std::vector<double> values() const;
  // "start:stop:points"
  static TimeGrid parse(std::string_view text);
  std::string to_string() const;
  bool operator==(const TimeGrid&) const = default;
};

struct ScenarioSpec {
  Preset preset = Preset::stimulated;
  Overrides overrides;

  Scenario resolve() const { return make_scenario(preset, overrides); }
  bool operator==(const ScenarioSpec&) const = default;
};

// Default phase scan {0, pi/2, pi}.
std::vector<double> default_phases();
// HZ-1 for every pair with (n, m) in {(1,1), (2,1), (3,1)}.
std::vector<WitnessSpec> default_specs();

struct SweepPlan {
  ScenarioSpec scenario;
  TimeGrid grid;
  std::vector<double> phases = default_phases();
  std::vector<WitnessSpec> specs = default_specs();
  std::map<std::string, double> plot_multipliers;  // spec string -> gain

  void validate() const;
  bool operator==(const SweepPlan&) const = default;
};

// Closed-form series, phi-major then spec order. Coefficients are evaluated once
// per grid point. The OpenMP path splits grid points across threads and gives
// bitwise the same values as the serial path.
std::vector<WitnessSeries> run_sweep(const SweepPlan& plan, Backend backend = Backend::openmp);

struct SignSummary {
  WitnessSpec spec;
  std::string scenario;
  double phi = 0.0;
  bool negative = false;
  double min_value = 0.0;
  double argmin_gt = 0.0;
};

// Negative region present iff min < -10 eps max|value|.
std::vector<SignSummary> sign_pattern(const std::vector<WitnessSeries>& series);

// Short label for a phase: "0", "pi2", "pi" or the number.
std::string phase_label(double phi);
// Column label "<scenario>/<spec with n,m as nXmY>/phi=<label>".
std::string series_label(const WitnessSeries& s);

enum class FigureId { fig2, fig3, fig4, fig5 };
std::string_view figure_name(FigureId id);
FigureId parse_figure(std::string_view name);

struct FigurePanel {
  std::string file_stem;  // e.g. "fig4_stimulated"
  std::string title;
  std::vector<std::string> columns;  // gt, then one per trace
  std::vector<double> multipliers;   // per trace column
  std::vector<std::vector<double>> rows;
  std::vector<WitnessSeries> raw;    // unscaled
};

struct Figure {
  FigureId id;
  std::vector<FigurePanel> panels;
  std::string plot_script;  // gnuplot, reads the panel CSVs by relative path
};

// Figures use gt in [0, 1] by default; see the README for why.
TimeGrid figure_grid();
Figure figure_data(FigureId id, const TimeGrid& grid = figure_grid(),
                   Backend backend = Backend::openmp);

struct ValidationPlan {
  ScenarioSpec scenario{Preset::desk, {}};
  FockConfig fock;
  double tol = 1e-10;
  int krylov_dim = 30;
  std::vector<double> times{0.0125, 0.025, 0.05};
  std::vector<WitnessSpec> specs;  // empty means validation_specs()

  void validate() const;
  bool operator==(const ValidationPlan&) const = default;
};

// HZ-1 ab (1,1), (2,1); HZ-1 bc (1,1); HZ-2 bc (1,1); three-mode; four-mode.
std::vector<WitnessSpec> validation_specs();

}  // namespace raman
