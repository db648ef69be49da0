#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "raman/errors.hpp"
#include "raman/output.hpp"
#include "raman/sweeps.hpp"

using namespace raman;

TEST_CASE("time grid") {
  const TimeGrid g = TimeGrid::parse("0:0.1:501");
  CHECK(g == TimeGrid{});
  CHECK(TimeGrid::parse(g.to_string()) == g);
  const auto v = g.values();
  CHECK(v.size() == 501);
  CHECK(v.front() == 0.0);
  CHECK(v.back() == 0.1);
  CHECK(v[250] == doctest::Approx(0.05));
  CHECK_THROWS_AS(TimeGrid::parse("0.1:1:10"), ConfigError);
  CHECK_THROWS_AS(TimeGrid::parse("0:1:1"), ConfigError);
  CHECK_THROWS_AS(TimeGrid::parse("0:-1:10"), ConfigError);
  CHECK_THROWS_AS(TimeGrid::parse("0:1"), ConfigError);
  CHECK_THROWS_AS(TimeGrid::parse("0:1:2.5"), ConfigError);
  CHECK_THROWS_AS(TimeGrid::parse("0:x:5"), ConfigError);
}

TEST_CASE("defaults") {
  SweepPlan plan;
  CHECK(plan.specs.size() == 18);
  CHECK(plan.phases == std::vector<double>{0.0, kPi / 2, kPi});
  CHECK(plan.scenario.preset == Preset::stimulated);
  for (const auto& s : plan.specs) {
    CHECK(s.criterion == Criterion::hz1);
    CHECK(s.m == 1);
  }
  CHECK_NOTHROW(plan.validate());
  plan.plot_multipliers["hz2:ab:1,1"] = 5.0;
  CHECK_THROWS_AS(plan.validate(), ConfigError);
}

TEST_CASE("sweep layout and labels") {
  SweepPlan plan;
  plan.grid = {0.0, 0.1, 11};
  plan.specs = {WitnessSpec::parse("hz1:ab:2,1"), WitnessSpec::three_mode()};
  const auto series = run_sweep(plan);
  REQUIRE(series.size() == 6);
  CHECK(series_label(series[0]) == "stimulated/hz1:ab:n2m1/phi=0");
  CHECK(series_label(series[1]) == "stimulated/three:abc/phi=0");
  CHECK(series_label(series[2]) == "stimulated/hz1:ab:n2m1/phi=pi2");
  CHECK(series_label(series[5]) == "stimulated/three:abc/phi=pi");
  for (const auto& s : series) {
    CHECK_NOTHROW(s.check_invariants());
    CHECK(std::abs(s.values.front()) < 1e-12);
  }
  CHECK(phase_label(0.3) == "0.3");
}

TEST_CASE("serial and openmp sweeps are bitwise equal and deterministic") {
  SweepPlan plan;
  plan.grid = {0.0, 1.0, 201};
  plan.specs.push_back(WitnessSpec::three_mode());
  plan.specs.push_back(WitnessSpec::four_mode());
  plan.specs.push_back(WitnessSpec::parse("hz2:bd:2,3"));
  const auto par = run_sweep(plan, Backend::openmp);
  const auto ser = run_sweep(plan, Backend::serial);
  const auto again = run_sweep(plan, Backend::openmp);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].values == ser[i].values);
    CHECK(par[i].values == again[i].values);
  }
}

TEST_CASE("grid refinement does not move shared points") {
  SweepPlan coarse, fine;
  coarse.grid = {0.0, 0.5, 11};
  fine.grid = {0.0, 0.5, 21};
  const auto a = run_sweep(coarse), b = run_sweep(fine);
  for (std::size_t s = 0; s < a.size(); ++s)
    for (std::size_t i = 0; i < a[s].values.size(); ++i)
      CHECK(a[s].values[i] ==
            doctest::Approx(b[s].values[2 * i]).epsilon(1e-12).scale(std::abs(a[s].values[i]) + 1e-300));
}

TEST_CASE("sign pattern thresholds") {
  WitnessSeries s;
  s.spec = WitnessSpec::three_mode();
  s.scenario = "x";
  s.times = {0.0, 0.1, 0.2};
  s.values = {0.0, 1.0, -1e-20};
  CHECK_FALSE(sign_pattern({s})[0].negative);  // rounding-level dip
  s.values = {0.0, 1.0, -1e-3};
  const auto r = sign_pattern({s})[0];
  CHECK(r.negative);
  CHECK(r.min_value == -1e-3);
  CHECK(r.argmin_gt == 0.2);
  s.values.clear();
  CHECK_THROWS_AS(sign_pattern({s}), ConfigError);
}

TEST_CASE("figure data") {
  const TimeGrid grid{0.0, 1.0, 51};
  const Figure f2 = figure_data(FigureId::fig2, grid);
  REQUIRE(f2.panels.size() == 6);
  std::set<std::string> stems;
  for (const auto& p : f2.panels) {
    stems.insert(p.file_stem);
    CHECK(p.columns.size() == 1 + p.raw.size());
    CHECK(p.multipliers.size() == p.raw.size());
    CHECK(p.rows.size() == 51);
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
      CHECK(p.rows[i][0] == p.raw[0].times[i]);
      for (std::size_t c = 0; c < p.raw.size(); ++c) REQUIRE(p.rows[i][c + 1] == p.raw[c].values[i] * p.multipliers[c]);
    }
  }
  CHECK(stems == std::set<std::string>{"fig2_ab", "fig2_bc", "fig2_ac", "fig2_ad", "fig2_cd", "fig2_bd"});
  CHECK(f2.plot_script.find("layout 2,3") != std::string::npos);

  const Figure f4 = figure_data(FigureId::fig4, grid);
  REQUIRE(f4.panels.size() == 2);
  CHECK(f4.panels[0].file_stem == "fig4_stimulated");
  CHECK(f4.panels[1].file_stem == "fig4_spontaneous");
  const Figure f5 = figure_data(FigureId::fig5, grid);
  CHECK(f5.panels[1].file_stem == "fig5_partial_spontaneous");
  CHECK(f5.plot_script.find("fig5_stimulated.csv") != std::string::npos);

  const Figure f3 = figure_data(FigureId::fig3, grid);
  for (const auto& p : f3.panels)
    for (const auto& s : p.raw) CHECK(s.spec.criterion == Criterion::hz2);

  CHECK(parse_figure("fig3") == FigureId::fig3);
  CHECK_THROWS_AS(parse_figure("fig9"), ConfigError);
  CHECK(figure_grid().stop == 1.0);
}

TEST_CASE("panel gains follow the caption convention") {
  const Figure f2 = figure_data(FigureId::fig2, TimeGrid{0.0, 1.0, 5});
  for (const auto& p : f2.panels) {
    for (std::size_t c = 0; c < p.raw.size(); ++c) {
      const int n = p.raw[c].spec.n;
      const double expect = p.file_stem == "fig2_cd" ? (n == 2 ? 1e3 : n == 3 ? 1e6 : 1.0)
                                                     : (n == 1 ? 1500.0 : n == 2 ? 50.0 : 1.0);
      CHECK(p.multipliers[c] == expect);
    }
  }
}

TEST_CASE("tables") {
  SweepPlan plan;
  plan.grid = {0.0, 0.1, 3};
  plan.specs = {WitnessSpec::three_mode()};
  plan.phases = {0.0};
  const Table t = series_table(run_sweep(plan));
  CHECK(t.columns == std::vector<std::string>{"gt", "stimulated/three:abc/phi=0"});
  CHECK(t.rows.size() == 3);
  const std::string csv = to_csv(t);
  CHECK(csv.rfind("gt,stimulated/three:abc/phi=0\n0,0\n0.05,", 0) == 0);
  CHECK(to_json(t).find("\"columns\"") != std::string::npos);
  CHECK(format_double(0.1) == "0.1");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
