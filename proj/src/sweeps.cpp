#include "raman/sweeps.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>

#include "raman/coefficients.hpp"
#include "raman/errors.hpp"
#include "raman/witnesses.hpp"

namespace raman {

void TimeGrid::validate() const {
  if (start != 0.0) throw ConfigError("must be 0 (series start at the separable point)", "grid.start");
  if (!(stop > 0.0) || !std::isfinite(stop)) throw ConfigError("must be finite and > 0", "grid.stop");
  if (points < 2) throw ConfigError("must be >= 2", "grid.points");
}

std::vector<double> TimeGrid::values() const {
  validate();
  std::vector<double> v(points);
  for (int i = 0; i < points; ++i) v[i] = start + (stop - start) * double(i) / double(points - 1);
  v.back() = stop;
  return v;
}

namespace {

double parse_double(std::string_view text, const char* key) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw ConfigError("expected a number, got \"" + std::string(text) + "\"", key);
  return v;
}

std::string fmt(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace

TimeGrid TimeGrid::parse(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos)
    throw ConfigError("expected start:stop:points, got \"" + std::string(text) + "\"", "grid");
  TimeGrid g;
  g.start = parse_double(text.substr(0, c1), "grid.start");
  g.stop = parse_double(text.substr(c1 + 1, c2 - c1 - 1), "grid.stop");
  const double pts = parse_double(text.substr(c2 + 1), "grid.points");
  if (pts != std::floor(pts) || pts > 1e8) throw ConfigError("must be an integer", "grid.points");
  g.points = static_cast<int>(pts);
  g.validate();
  return g;
}

std::string TimeGrid::to_string() const {
  return fmt(start) + ":" + fmt(stop) + ":" + std::to_string(points);
}

std::vector<double> default_phases() { return {0.0, kPi / 2, kPi}; }

std::vector<WitnessSpec> default_specs() {
  std::vector<WitnessSpec> out;
  for (Pair p : kAllPairs)
    for (int n = 1; n <= 3; ++n) out.push_back(WitnessSpec::pairwise(Criterion::hz1, p, n, 1));
  return out;
}

void SweepPlan::validate() const {
  grid.validate();
  if (phases.empty()) throw ConfigError("at least one phase is required", "phases");
  for (double p : phases)
    if (!std::isfinite(p)) throw ConfigError("phases must be finite", "phases");
  if (specs.empty()) throw ConfigError("at least one spec is required", "specs");
  for (const auto& s : specs) s.validate();
  for (const auto& [key, gain] : plot_multipliers) {
    const auto spec = WitnessSpec::parse(key);
    if (std::find(specs.begin(), specs.end(), spec) == specs.end())
      throw ConfigError("multiplier for a spec not in the plan", "plot_multipliers." + key);
    if (!std::isfinite(gain) || gain == 0.0)
      throw ConfigError("must be finite and nonzero", "plot_multipliers." + key);
  }
  scenario.resolve();
}

std::vector<WitnessSeries> run_sweep(const SweepPlan& plan, Backend backend) {
  plan.validate();
  const Scenario sc = plan.scenario.resolve();
  const std::vector<double> gt = plan.grid.values();
  const std::size_t np = gt.size(), nphi = plan.phases.size(), ns = plan.specs.size();

  std::vector<CoherentAmplitudes> amps(nphi);
  for (std::size_t f = 0; f < nphi; ++f) amps[f] = sc.amps.with_phase(plan.phases[f]);

  // values[(f * ns + s) * np + i]
  std::vector<double> values(nphi * ns * np);
  std::vector<double> residual(np, 0.0);
  auto point = [&](std::size_t i) {
    const CoefficientSet k = eval_coefficients(sc.params, gt[i] / sc.params.g);
    double worst = 0.0;
    for (std::size_t f = 0; f < nphi; ++f)
      for (std::size_t s = 0; s < ns; ++s) {
        const WitnessValue w = evaluate_witness(plan.specs[s], k, amps[f]);
        values[(f * ns + s) * np + i] = w.value;
        if (!w.real_ok()) worst = std::max(worst, w.residual_imag);
      }
    residual[i] = worst;
  };
  if (backend == Backend::openmp) {
    const auto n = static_cast<std::ptrdiff_t>(np);
    std::exception_ptr failure;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        point(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(raman_sweep_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (std::size_t i = 0; i < np; ++i) point(i);
  }
  for (std::size_t i = 0; i < np; ++i)
    if (residual[i] > 0.0)
      throw NumericalError("imaginary residue " + fmt(residual[i]) + " at gt = " + fmt(gt[i]));

  std::vector<WitnessSeries> out;
  out.reserve(nphi * ns);
  for (std::size_t f = 0; f < nphi; ++f)
    for (std::size_t s = 0; s < ns; ++s) {
      WitnessSeries w;
      w.spec = plan.specs[s];
      w.times = gt;
      w.values.assign(values.begin() + (f * ns + s) * np, values.begin() + (f * ns + s + 1) * np);
      w.scenario = sc.label;
      w.phi = plan.phases[f];
      out.push_back(std::move(w));
    }
  return out;
}

std::vector<SignSummary> sign_pattern(const std::vector<WitnessSeries>& series) {
  std::vector<SignSummary> out;
  for (const auto& s : series) {
    if (s.values.empty()) throw ConfigError("empty series " + s.spec.to_string(), "series");
    SignSummary r;
    r.spec = s.spec;
    r.scenario = s.scenario;
    r.phi = s.phi;
    double scale = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      scale = std::max(scale, std::abs(s.values[i]));
      if (s.values[i] < s.values[arg]) arg = i;
    }
    r.min_value = s.values[arg];
    r.argmin_gt = s.times[arg];
    r.negative = r.min_value < -10.0 * std::numeric_limits<double>::epsilon() * scale;
    out.push_back(r);
  }
  return out;
}

std::string phase_label(double phi) {
  if (phi == 0.0) return "0";
  if (phi == kPi / 2) return "pi2";
  if (phi == kPi) return "pi";
  return fmt(phi);
}

std::string series_label(const WitnessSeries& s) {
  std::string spec{criterion_name(s.spec.criterion)};
  spec += ':';
  for (Mode m : s.spec.modes) spec += mode_label(m);
  if (s.spec.is_pairwise()) spec += ":n" + std::to_string(s.spec.n) + "m" + std::to_string(s.spec.m);
  return s.scenario + "/" + spec + "/phi=" + phase_label(s.phi);
}

std::vector<WitnessSpec> validation_specs() {
  return {WitnessSpec::parse("hz1:ab:1,1"), WitnessSpec::parse("hz1:ab:2,1"),
          WitnessSpec::parse("hz1:bc:1,1"), WitnessSpec::parse("hz2:bc:1,1"),
          WitnessSpec::three_mode(),        WitnessSpec::four_mode()};
}

void ValidationPlan::validate() const {
  fock.validate();
  if (!(tol > 0.0)) throw ConfigError("must be > 0", "oracle.tol");
  if (krylov_dim < 2) throw ConfigError("must be >= 2", "oracle.krylov_dim");
  if (times.empty()) throw ConfigError("at least one time is required", "oracle.times");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0)) throw ConfigError("times must be > 0", "oracle.times");
    if (i > 0 && !(times[i] > times[i - 1])) throw ConfigError("times must increase", "oracle.times");
  }
  for (const auto& s : specs) s.validate();
  scenario.resolve();
}

}  // namespace raman
