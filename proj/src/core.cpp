#include "raman/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "raman/errors.hpp"

namespace raman {

char mode_label(Mode m) { return static_cast<char>('a' + static_cast<int>(m)); }

Mode parse_mode(char ch) {
  if (ch < 'a' || ch > 'd') throw SpecError(std::string("unknown mode '") + ch + "'", "modes");
  return static_cast<Mode>(ch - 'a');
}

CoherentAmplitudes CoherentAmplitudes::from_polar(double abs1, double phi, double abs2, double abs3,
                                                  double abs4) {
  CoherentAmplitudes out;
  out.alpha1 = std::polar(abs1, -phi);
  out.alpha2 = abs2;
  out.alpha3 = abs3;
  out.alpha4 = abs4;
  out.phi = phi;
  return out;
}

cplx CoherentAmplitudes::operator[](Mode m) const {
  switch (m) {
    case Mode::a: return alpha1;
    case Mode::b: return alpha2;
    case Mode::c: return alpha3;
    case Mode::d: return alpha4;
  }
  return {};
}

CoherentAmplitudes CoherentAmplitudes::with_phase(double new_phi) const {
  CoherentAmplitudes out = *this;
  out.alpha1 = std::polar(std::abs(alpha1), -new_phi);
  out.phi = new_phi;
  return out;
}

void RamanParams::validate() const {
  if (!std::isfinite(g) || g <= 0.0) throw ConfigError("must be finite and > 0", "g");
  if (!std::isfinite(chi) || chi < 0.0) throw ConfigError("must be finite and >= 0", "chi");
  if (!std::isfinite(dw1)) throw ConfigError("must be finite", "dw1");
  if (!std::isfinite(dw2)) throw ConfigError("must be finite", "dw2");
  if (!omega) return;
  const auto& w = *omega;
  for (double x : w)
    if (!std::isfinite(x)) throw ConfigError("bare frequencies must be finite", "omega");
  auto close = [](double x, double y) {
    return std::abs(x - y) <= 1e-12 * std::max({std::abs(x), std::abs(y), 1e-300}) ||
           (x == 0.0 && y == 0.0);
  };
  if (!close(dw1, w[1] + w[2] - w[0]))
    throw ConfigError("inconsistent with omega_b + omega_c - omega_a", "dw1");
  if (!close(dw2, w[0] + w[2] - w[3]))
    throw ConfigError("inconsistent with omega_a + omega_c - omega_d", "dw2");
}

std::array<double, 4> RamanParams::frequencies() const {
  return omega ? *omega : std::array<double, 4>{0.0, 0.0, 0.0, 0.0};
}

RamanParams RamanParams::from_frequencies(double g, double chi, const std::array<double, 4>& w) {
  RamanParams p;
  p.g = g;
  p.chi = chi;
  p.dw1 = w[1] + w[2] - w[0];
  p.dw2 = w[0] + w[2] - w[3];
  p.omega = w;
  return p;
}

bool beyond_perturbative_range(const RamanParams& p, double t) {
  return p.g * t > 0.5 || p.chi * t > 0.5;
}

ScaledParams nondimensionalize(const RamanParams& p) {
  if (p.g == 0.0) throw ConfigError("g = 0 makes the scaled parameters degenerate", "g");
  return {p.chi / p.g, p.dw1 / p.g, p.dw2 / p.g, 1.0 / p.g};
}

RamanParams unit_coupling(const RamanParams& p) {
  const ScaledParams s = nondimensionalize(p);
  RamanParams out;
  out.g = 1.0;
  out.chi = s.chi_over_g;
  out.dw1 = s.dw1_over_g;
  out.dw2 = s.dw2_over_g;
  if (p.omega) {
    auto w = *p.omega;
    for (double& x : w) x /= p.g;
    out.omega = w;
  }
  return out;
}

std::string_view criterion_name(Criterion c) {
  switch (c) {
    case Criterion::hz1: return "hz1";
    case Criterion::hz2: return "hz2";
    case Criterion::three_mode: return "three";
    case Criterion::four_mode: return "four";
  }
  return "?";
}

std::string_view pair_name(Pair p) {
  static constexpr std::array<std::string_view, 6> names = {"ab", "bc", "ac", "ad", "cd", "bd"};
  return names[static_cast<int>(p)];
}

WitnessSpec WitnessSpec::pairwise(Criterion c, Pair p, int n, int m) {
  const auto name = pair_name(p);
  WitnessSpec s;
  s.criterion = c;
  s.modes = {parse_mode(name[0]), parse_mode(name[1])};
  s.n = n;
  s.m = m;
  s.validate();
  return s;
}

WitnessSpec WitnessSpec::three_mode() {
  WitnessSpec s;
  s.criterion = Criterion::three_mode;
  s.modes = {Mode::a, Mode::b, Mode::c};
  return s;
}

WitnessSpec WitnessSpec::four_mode() {
  WitnessSpec s;
  s.criterion = Criterion::four_mode;
  s.modes = {Mode::a, Mode::b, Mode::c, Mode::d};
  return s;
}

namespace {

std::string modes_string(const std::vector<Mode>& modes) {
  std::string out;
  for (Mode m : modes) out += mode_label(m);
  return out;
}

}  // namespace

void WitnessSpec::validate() const {
  const std::string ms = modes_string(modes);
  for (std::size_t i = 0; i < modes.size(); ++i)
    for (std::size_t j = i + 1; j < modes.size(); ++j)
      if (modes[i] == modes[j]) throw SpecError("modes must be distinct, got \"" + ms + "\"", "modes");
  switch (criterion) {
    case Criterion::hz1:
    case Criterion::hz2: {
      if (modes.size() != 2) throw SpecError("pairwise criteria take exactly two modes", "modes");
      std::string rev{ms.rbegin(), ms.rend()};
      bool canonical = false, reversed = false;
      for (Pair p : kAllPairs) {
        canonical = canonical || pair_name(p) == ms;
        reversed = reversed || pair_name(p) == rev;
      }
      if (!canonical) {
        if (reversed) throw SpecError("canonical order is \"" + rev + "\", got \"" + ms + "\"", "modes");
        throw SpecError("unsupported pair \"" + ms + "\"", "modes");
      }
      if (n < 1) throw SpecError("must be >= 1", "n");
      if (m < 1) throw SpecError("must be >= 1", "m");
      break;
    }
    case Criterion::three_mode:
      if (ms != "abc") throw SpecError("three-mode witness supports only \"abc\"", "modes");
      break;
    case Criterion::four_mode:
      if (ms != "abcd") throw SpecError("four-mode witness supports only \"abcd\"", "modes");
      break;
  }
}

Pair WitnessSpec::pair() const {
  const std::string ms = modes_string(modes);
  for (Pair p : kAllPairs)
    if (pair_name(p) == ms) return p;
  throw SpecError("not a canonical pair: \"" + ms + "\"", "modes");
}

std::string WitnessSpec::to_string() const {
  std::string out{criterion_name(criterion)};
  out += ':' + modes_string(modes);
  if (is_pairwise()) out += ':' + std::to_string(n) + ',' + std::to_string(m);
  return out;
}

namespace {

int parse_positive(std::string_view text, const char* key) {
  int v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw SpecError("expected a positive integer, got \"" + std::string(text) + "\"", key);
  return v;
}

}  // namespace

WitnessSpec WitnessSpec::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(':', start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  const std::string_view crit = parts[0];
  WitnessSpec s;
  if (crit == "three" || crit == "four") {
    s = crit == "three" ? three_mode() : four_mode();
    if (parts.size() > 2) throw SpecError("multi-mode specs take no orders: \"" + std::string(text) + "\"", "spec");
    if (parts.size() == 2) {
      s.modes.clear();
      for (char ch : parts[1]) s.modes.push_back(parse_mode(ch));
    }
    s.validate();
    return s;
  }
  if (crit == "hz1") s.criterion = Criterion::hz1;
  else if (crit == "hz2") s.criterion = Criterion::hz2;
  else throw SpecError("unknown criterion \"" + std::string(crit) + "\"", "spec");
  if (parts.size() != 3)
    throw SpecError("expected criterion:modes:n,m, got \"" + std::string(text) + "\"", "spec");
  s.modes.clear();
  for (char ch : parts[1]) s.modes.push_back(parse_mode(ch));
  const auto comma = parts[2].find(',');
  if (comma == std::string_view::npos)
    throw SpecError("orders must be written n,m, got \"" + std::string(parts[2]) + "\"", "spec");
  s.n = parse_positive(parts[2].substr(0, comma), "n");
  s.m = parse_positive(parts[2].substr(comma + 1), "m");
  s.validate();
  return s;
}

void WitnessSeries::check_invariants(double zero_tol) const {
  if (times.size() != values.size())
    throw NumericalError("series " + spec.to_string() + ": times/values length mismatch");
  if (times.empty()) throw NumericalError("series " + spec.to_string() + " is empty");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw NumericalError("series " + spec.to_string() + ": times not strictly increasing");
  if (times.front() == 0.0 && std::abs(values.front()) > zero_tol)
    throw NumericalError("series " + spec.to_string() + ": nonzero value at t = 0");
}

MomentKey MomentKey::make(std::initializer_list<std::pair<Mode, std::pair<int, int>>> entries) {
  MomentKey k;
  for (const auto& [mode, pq] : entries) {
    k.powers[2 * static_cast<int>(mode)] += pq.first;
    k.powers[2 * static_cast<int>(mode) + 1] += pq.second;
  }
  return k;
}

std::string MomentKey::to_string() const {
  std::ostringstream os;
  os << "<";
  bool any = false;
  for (int x = 0; x < 4; ++x) {
    const char lab = mode_label(static_cast<Mode>(x));
    if (powers[2 * x] > 0) {
      os << (any ? " " : "") << lab << "+^" << powers[2 * x];
      any = true;
    }
    if (powers[2 * x + 1] > 0) {
      os << (any ? " " : "") << lab << "^" << powers[2 * x + 1];
      any = true;
    }
  }
  if (!any) os << "1";
  os << ">";
  return os.str();
}

std::string_view preset_name(Preset p) {
  switch (p) {
    case Preset::stimulated: return "stimulated";
    case Preset::spontaneous: return "spontaneous";
    case Preset::partial_spontaneous: return "partial_spontaneous";
    case Preset::desk: return "desk";
  }
  return "?";
}

Preset parse_preset(std::string_view name) {
  for (Preset p : {Preset::stimulated, Preset::spontaneous, Preset::partial_spontaneous, Preset::desk})
    if (preset_name(p) == name) return p;
  throw ConfigError("unknown preset \"" + std::string(name) + "\"", "preset");
}

const std::vector<std::string>& override_keys() {
  static const std::vector<std::string> keys = {"g",       "chi",     "dw1",     "dw2",
                                                "omega_a", "omega_b", "omega_c", "omega_d",
                                                "alpha1",  "alpha2",  "alpha3",  "alpha4",
                                                "phi"};
  return keys;
}

Scenario make_scenario(Preset preset, const Overrides& overrides) {
  double g = 1e4, chi = 1e4, dw1 = 1e5, dw2 = 1.9e5;
  double a1 = 10.0, a2 = 8.0, a3 = 0.01, a4 = 1.0, phi = 0.0;
  switch (preset) {
    case Preset::stimulated: break;
    case Preset::spontaneous: a2 = a3 = a4 = 0.0; break;
    case Preset::partial_spontaneous: a2 = a3 = 0.0; break;
    case Preset::desk:
      g = 1.0, chi = 1.0, dw1 = 10.0, dw2 = 19.0;
      a1 = 0.5, a2 = 0.3, a3 = 0.2, a4 = 0.1;
      break;
  }

  const auto& known = override_keys();
  for (const auto& [key, value] : overrides) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown override field", key);
    if (!std::isfinite(value)) throw ConfigError("override must be finite", key);
  }
  auto take = [&](const char* key, double& slot) {
    if (auto it = overrides.find(key); it != overrides.end()) slot = it->second;
  };
  take("g", g);
  take("chi", chi);
  take("phi", phi);
  take("alpha1", a1);
  take("alpha2", a2);
  take("alpha3", a3);
  take("alpha4", a4);
  for (const char* k : {"alpha1", "alpha2", "alpha3", "alpha4"})
    if (auto it = overrides.find(k); it != overrides.end() && it->second < 0.0)
      throw ConfigError("amplitude magnitudes must be >= 0", k);

  const bool has_dw1 = overrides.count("dw1") > 0, has_dw2 = overrides.count("dw2") > 0;
  take("dw1", dw1);
  take("dw2", dw2);

  int n_omega = 0;
  std::array<double, 4> w{};
  const char* wkeys[4] = {"omega_a", "omega_b", "omega_c", "omega_d"};
  for (int i = 0; i < 4; ++i)
    if (auto it = overrides.find(wkeys[i]); it != overrides.end()) {
      w[i] = it->second;
      ++n_omega;
    }

  Scenario s;
  if (n_omega != 0 && n_omega != 4)
    throw ConfigError("omega_a..omega_d must be given together", "omega");
  if (n_omega == 4) {
    s.params = RamanParams::from_frequencies(g, chi, w);
    if (has_dw1) s.params.dw1 = dw1;
    if (has_dw2) s.params.dw2 = dw2;
  } else {
    s.params.g = g;
    s.params.chi = chi;
    s.params.dw1 = dw1;
    s.params.dw2 = dw2;
  }
  s.params.validate();
  s.amps = CoherentAmplitudes::from_polar(a1, phi, a2, a3, a4);
  s.label = std::string(preset_name(preset));
  return s;
}

}  // namespace raman
