#include <sstream>

#include "raman/errors.hpp"
#include "raman/sweeps.hpp"

namespace raman {

std::string_view figure_name(FigureId id) {
  switch (id) {
    case FigureId::fig2: return "fig2";
    case FigureId::fig3: return "fig3";
    case FigureId::fig4: return "fig4";
    case FigureId::fig5: return "fig5";
  }
  return "?";
}

FigureId parse_figure(std::string_view name) {
  for (FigureId id : {FigureId::fig2, FigureId::fig3, FigureId::fig4, FigureId::fig5})
    if (figure_name(id) == name) return id;
  throw ConfigError("unknown figure \"" + std::string(name) + "\" (fig2..fig5)", "id");
}

TimeGrid figure_grid() { return TimeGrid{0.0, 1.0, 501}; }

namespace {

// Caption gains: panel cd scales n = 2, 3 by 1e3, 1e6; the other panels scale n = 1, 2 by 1500, 50.
double caption_gain(Pair p, int n) {
  if (p == Pair::cd) return n == 2 ? 1e3 : (n == 3 ? 1e6 : 1.0);
  return n == 1 ? 1500.0 : (n == 2 ? 50.0 : 1.0);
}

std::string trace_title(const WitnessSeries& s, double gain) {
  std::ostringstream os;
  if (s.spec.is_pairwise()) os << "n=" << s.spec.n << " ";
  os << "phi=" << phase_label(s.phi);
  if (gain != 1.0) os << " x" << gain;
  return os.str();
}

FigurePanel make_panel(const SweepPlan& plan, std::string stem, std::string title, Backend backend) {
  FigurePanel panel;
  panel.file_stem = std::move(stem);
  panel.title = std::move(title);
  panel.raw = run_sweep(plan, backend);
  panel.columns.push_back("gt");
  for (const auto& s : panel.raw) {
    double gain = 1.0;
    if (auto it = plan.plot_multipliers.find(s.spec.to_string()); it != plan.plot_multipliers.end())
      gain = it->second;
    std::string col = series_label(s);
    if (gain != 1.0) {
      std::ostringstream os;
      os << "*" << gain;
      col += os.str();
    }
    panel.columns.push_back(col);
    panel.multipliers.push_back(gain);
  }
  const auto& gt = panel.raw.front().times;
  panel.rows.resize(gt.size());
  for (std::size_t i = 0; i < gt.size(); ++i) {
    auto& row = panel.rows[i];
    row.push_back(gt[i]);
    for (std::size_t c = 0; c < panel.raw.size(); ++c) row.push_back(panel.raw[c].values[i] * panel.multipliers[c]);
  }
  return panel;
}

std::string plot_script(const Figure& fig) {
  const std::string name{figure_name(fig.id)};
  const bool grid6 = fig.panels.size() == 6;
  std::ostringstream os;
  os << "# gnuplot script for " << name << "; run from the directory holding the CSV files\n";
  os << "set datafile separator \",\"\n";
  os << "set terminal pngcairo size " << (grid6 ? "1500,900" : "1200,450") << "\n";
  os << "set output \"" << name << ".png\"\n";
  os << "set multiplot layout " << (grid6 ? "2,3" : "1,2") << "\n";
  os << "set xlabel \"gt\"\n";
  os << "set key left bottom\n";
  for (const auto& p : fig.panels) {
    os << "set title \"" << p.title << "\"\n";
    os << "plot ";
    for (std::size_t c = 0; c < p.raw.size(); ++c) {
      if (c) os << ", \\\n     ";
      os << "\"" << p.file_stem << ".csv\" skip 1 using 1:" << c + 2 << " with lines title \""
         << trace_title(p.raw[c], p.multipliers[c]) << "\"";
    }
    os << "\n";
  }
  os << "unset multiplot\n";
  return os.str();
}

}  // namespace

Figure figure_data(FigureId id, const TimeGrid& grid, Backend backend) {
  Figure fig;
  fig.id = id;
  const std::string name{figure_name(id)};
  switch (id) {
    case FigureId::fig2:
    case FigureId::fig3: {
      const Criterion c = id == FigureId::fig2 ? Criterion::hz1 : Criterion::hz2;
      for (Pair p : kAllPairs) {
        SweepPlan plan;
        plan.scenario = {Preset::stimulated, {}};
        plan.grid = grid;
        plan.specs.clear();
        for (int n = 1; n <= 3; ++n) {
          plan.specs.push_back(WitnessSpec::pairwise(c, p, n, 1));
          const double gain = caption_gain(p, n);
          if (gain != 1.0) plan.plot_multipliers[plan.specs.back().to_string()] = gain;
        }
        const std::string pn{pair_name(p)};
        fig.panels.push_back(make_panel(plan, name + "_" + pn,
                                        std::string(c == Criterion::hz1 ? "HZ-1 " : "HZ-2 ") + pn, backend));
      }
      break;
    }
    case FigureId::fig4:
    case FigureId::fig5: {
      const bool three = id == FigureId::fig4;
      const Preset second = three ? Preset::spontaneous : Preset::partial_spontaneous;
      for (Preset pr : {Preset::stimulated, second}) {
        SweepPlan plan;
        plan.scenario = {pr, {}};
        plan.grid = grid;
        plan.specs = {three ? WitnessSpec::three_mode() : WitnessSpec::four_mode()};
        const std::string pn{preset_name(pr)};
        fig.panels.push_back(make_panel(plan, name + "_" + pn,
                                        std::string(three ? "three-mode abc, " : "four-mode abcd, ") + pn,
                                        backend));
      }
      break;
    }
  }
  fig.plot_script = plot_script(fig);
  return fig;
}

}  // namespace raman
