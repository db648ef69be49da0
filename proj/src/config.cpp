#include "raman/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "raman/errors.hpp"

namespace raman {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_number(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

double parse_phase(std::string_view text) {
  const std::string s = trim(text);
  double v = 0.0;
  if (parse_number(s, v)) {
    if (!std::isfinite(v)) throw ConfigError("phase must be finite", "phi");
    return v;
  }
  const auto pos = s.find("pi");
  if (pos == std::string::npos) throw ConfigError("cannot parse phase \"" + s + "\"", "phi");
  std::string head = s.substr(0, pos), tail = s.substr(pos + 2);
  double sign = 1.0;
  if (!head.empty() && (head[0] == '-' || head[0] == '+')) {
    sign = head[0] == '-' ? -1.0 : 1.0;
    head.erase(0, 1);
  }
  if (!head.empty() && head.back() == '*') head.pop_back();
  double num = 1.0, den = 1.0;
  if (!head.empty() && !parse_number(head, num)) throw ConfigError("cannot parse phase \"" + s + "\"", "phi");
  if (!tail.empty()) {
    if (tail[0] != '/' || !parse_number(tail.substr(1), den) || den == 0.0)
      throw ConfigError("cannot parse phase \"" + s + "\"", "phi");
  }
  // Keep pi/2 and pi bit-exact so labels and comparisons stay stable.
  return sign * (num * kPi / den);
}

std::vector<double> parse_phase_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find(',', start);
    const auto item = text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
    if (trim(item).empty()) throw ConfigError("empty entry in phase list", "phi");
    out.push_back(parse_phase(item));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<WitnessSpec> parse_spec_list(std::string_view text) {
  std::vector<WitnessSpec> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(WitnessSpec::parse(cur));
    cur.clear();
  };
  for (char ch : text) {
    if (ch == ';' || ch == ' ' || ch == '\t' || ch == '\n') flush();
    else cur += ch;
  }
  flush();
  if (out.empty()) throw SpecError("empty spec list", "spec");
  return out;
}

std::array<int, 4> parse_cutoffs(std::string_view text) {
  std::array<int, 4> out{};
  std::size_t start = 0;
  for (int i = 0; i < 4; ++i) {
    const auto pos = text.find(',', start);
    if ((i < 3) == (pos == std::string_view::npos))
      throw ConfigError("expected four comma-separated integers", "cutoffs");
    const auto item = trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), out[i]);
    if (ec != std::errc{} || ptr != item.data() + item.size() || item.empty())
      throw ConfigError("expected an integer, got \"" + item + "\"", "cutoffs");
    start = pos + 1;
  }
  return out;
}

namespace {

std::string where(const YAML::Node& n) {
  const YAML::Mark m = n.Mark();
  if (m.is_null()) return {};
  return " (line " + std::to_string(m.line + 1) + ", column " + std::to_string(m.column + 1) + ")";
}

[[noreturn]] void fail(const YAML::Node& n, const std::string& field, const std::string& msg) {
  throw ConfigError(msg + where(n), field);
}

void check_keys(const YAML::Node& map, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!map.IsMap()) fail(map, path.empty() ? "<root>" : path, "expected a mapping");
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end())
      fail(kv.first, path.empty() ? key : path + "." + key, "unknown key");
  }
}

std::string scalar(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) fail(n, field, "expected a scalar");
  return n.Scalar();
}

double number(const YAML::Node& n, const std::string& field) {
  double v = 0.0;
  const std::string s = scalar(n, field);
  if (!parse_number(s, v) || !std::isfinite(v)) fail(n, field, "expected a finite number, got \"" + s + "\"");
  return v;
}

int integer(const YAML::Node& n, const std::string& field) {
  const double v = number(n, field);
  if (v != std::floor(v) || std::abs(v) > 1e9) fail(n, field, "expected an integer");
  return static_cast<int>(v);
}

template <class F>
auto rethrow_at(const YAML::Node& n, const std::string& field, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError& e) {
    fail(n, field, e.what());
  }
}

ScenarioSpec read_scenario(const YAML::Node& n, const std::string& path, Preset fallback) {
  ScenarioSpec s{fallback, {}};
  if (!n) return s;
  check_keys(n, path, {"preset", "overrides"});
  if (n["preset"]) {
    const std::string name = scalar(n["preset"], path + ".preset");
    s.preset = rethrow_at(n["preset"], path + ".preset", [&] { return parse_preset(name); });
  }
  if (const auto ov = n["overrides"]) {
    if (!ov.IsMap()) fail(ov, path + ".overrides", "expected a mapping");
    const auto& known = override_keys();
    for (const auto& kv : ov) {
      const std::string key = kv.first.as<std::string>();
      const std::string field = path + ".overrides." + key;
      if (std::find(known.begin(), known.end(), key) == known.end()) fail(kv.first, field, "unknown override field");
      s.overrides[key] = key == "phi" ? rethrow_at(kv.second, field, [&] { return parse_phase(scalar(kv.second, field)); })
                                      : number(kv.second, field);
    }
  }
  rethrow_at(n, path, [&] { return s.resolve(); });
  return s;
}

std::vector<WitnessSpec> read_specs(const YAML::Node& n, const std::string& path) {
  if (!n.IsSequence()) fail(n, path, "expected a list of spec strings");
  std::vector<WitnessSpec> out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const std::string field = path + "[" + std::to_string(i) + "]";
    const std::string text = scalar(n[i], field);
    out.push_back(rethrow_at(n[i], field, [&] { return WitnessSpec::parse(text); }));
  }
  return out;
}

std::vector<double> read_phases(const YAML::Node& n, const std::string& path) {
  if (!n.IsSequence()) fail(n, path, "expected a list of phases");
  std::vector<double> out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const std::string field = path + "[" + std::to_string(i) + "]";
    const std::string text = scalar(n[i], field);
    out.push_back(rethrow_at(n[i], field, [&] { return parse_phase(text); }));
  }
  return out;
}

}  // namespace

RunPlan parse_config(std::string_view text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ": parse error at line " + std::to_string(e.mark.line + 1) + ", column " +
                          std::to_string(e.mark.column + 1) + ": " + e.msg,
                      "config");
  }
  RunPlan plan;
  if (!root || root.IsNull()) return plan;
  check_keys(root, "", {"scenario", "grid", "phases", "specs", "plot_multipliers", "oracle", "output"});

  plan.sweep.scenario = read_scenario(root["scenario"], "scenario", Preset::stimulated);
  if (const auto g = root["grid"]) {
    check_keys(g, "grid", {"start", "stop", "points"});
    if (g["start"]) plan.sweep.grid.start = number(g["start"], "grid.start");
    if (g["stop"]) plan.sweep.grid.stop = number(g["stop"], "grid.stop");
    if (g["points"]) plan.sweep.grid.points = integer(g["points"], "grid.points");
    rethrow_at(g, "grid", [&] { plan.sweep.grid.validate(); return 0; });
  }
  if (const auto p = root["phases"]) plan.sweep.phases = read_phases(p, "phases");
  if (const auto s = root["specs"]) plan.sweep.specs = read_specs(s, "specs");
  if (const auto m = root["plot_multipliers"]) {
    if (!m.IsMap()) fail(m, "plot_multipliers", "expected a mapping spec -> gain");
    for (const auto& kv : m) {
      const std::string key = kv.first.as<std::string>();
      const std::string field = "plot_multipliers." + key;
      const auto spec = rethrow_at(kv.first, field, [&] { return WitnessSpec::parse(key); });
      plan.sweep.plot_multipliers[spec.to_string()] = number(kv.second, field);
    }
  }
  rethrow_at(root, "sweep", [&] { plan.sweep.validate(); return 0; });

  if (const auto o = root["oracle"]) {
    check_keys(o, "oracle", {"scenario", "cutoffs", "leak_tol", "max_dimension", "tol", "krylov_dim", "times", "specs"});
    auto& v = plan.oracle;
    v.scenario = read_scenario(o["scenario"], "oracle.scenario", Preset::desk);
    if (const auto c = o["cutoffs"]) {
      if (!c.IsSequence() || c.size() != 4) fail(c, "oracle.cutoffs", "expected four integers");
      for (int i = 0; i < 4; ++i) v.fock.cutoffs[i] = integer(c[i], "oracle.cutoffs");
    }
    if (o["leak_tol"]) v.fock.leak_tol = number(o["leak_tol"], "oracle.leak_tol");
    if (o["max_dimension"]) {
      const double d = number(o["max_dimension"], "oracle.max_dimension");
      if (d < 1 || d != std::floor(d)) fail(o["max_dimension"], "oracle.max_dimension", "expected a positive integer");
      v.fock.max_dimension = static_cast<std::size_t>(d);
    }
    if (o["tol"]) v.tol = number(o["tol"], "oracle.tol");
    if (o["krylov_dim"]) v.krylov_dim = integer(o["krylov_dim"], "oracle.krylov_dim");
    if (const auto t = o["times"]) {
      if (!t.IsSequence()) fail(t, "oracle.times", "expected a list of gt values");
      v.times.clear();
      for (std::size_t i = 0; i < t.size(); ++i) v.times.push_back(number(t[i], "oracle.times"));
    }
    if (const auto s = o["specs"]) v.specs = read_specs(s, "oracle.specs");
    rethrow_at(o, "oracle", [&] { v.validate(); return 0; });
  }
  if (const auto out = root["output"]) {
    check_keys(out, "output", {"format"});
    if (out["format"]) {
      const std::string f = scalar(out["format"], "output.format");
      plan.format = rethrow_at(out["format"], "output.format", [&] { return parse_format(f); });
    }
  }
  return plan;
}

RunPlan load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string(), "config");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

namespace {

void write_scenario(std::ostringstream& os, const ScenarioSpec& s, const std::string& indent) {
  os << indent << "preset: " << preset_name(s.preset) << "\n";
  os << indent << "overrides:";
  if (s.overrides.empty()) {
    os << " {}\n";
    return;
  }
  os << "\n";
  for (const auto& [k, v] : s.overrides) os << indent << "  " << k << ": " << format_double(v) << "\n";
}

void write_specs(std::ostringstream& os, const std::vector<WitnessSpec>& specs, const std::string& indent) {
  if (specs.empty()) {
    os << " []\n";
    return;
  }
  os << "\n";
  for (const auto& s : specs) os << indent << "- \"" << s.to_string() << "\"\n";
}

}  // namespace

std::string serialize_config(const RunPlan& plan) {
  std::ostringstream os;
  const auto& s = plan.sweep;
  os << "scenario:\n";
  write_scenario(os, s.scenario, "  ");
  os << "grid:\n  start: " << format_double(s.grid.start) << "\n  stop: " << format_double(s.grid.stop)
     << "\n  points: " << s.grid.points << "\n";
  os << "phases: [";
  for (std::size_t i = 0; i < s.phases.size(); ++i) os << (i ? ", " : "") << format_double(s.phases[i]);
  os << "]\n";
  os << "specs:";
  write_specs(os, s.specs, "  ");
  os << "plot_multipliers:";
  if (s.plot_multipliers.empty()) os << " {}\n";
  else {
    os << "\n";
    for (const auto& [k, v] : s.plot_multipliers) os << "  \"" << k << "\": " << format_double(v) << "\n";
  }
  const auto& v = plan.oracle;
  os << "oracle:\n  scenario:\n";
  write_scenario(os, v.scenario, "    ");
  os << "  cutoffs: [" << v.fock.cutoffs[0] << ", " << v.fock.cutoffs[1] << ", " << v.fock.cutoffs[2] << ", "
     << v.fock.cutoffs[3] << "]\n";
  os << "  leak_tol: " << format_double(v.fock.leak_tol) << "\n";
  os << "  max_dimension: " << v.fock.max_dimension << "\n";
  os << "  tol: " << format_double(v.tol) << "\n";
  os << "  krylov_dim: " << v.krylov_dim << "\n";
  os << "  times: [";
  for (std::size_t i = 0; i < v.times.size(); ++i) os << (i ? ", " : "") << format_double(v.times[i]);
  os << "]\n";
  os << "  specs:";
  write_specs(os, v.specs, "    ");
  os << "output:\n  format: " << (plan.format == Format::csv ? "csv" : "json") << "\n";
  return os.str();
}

}  // namespace raman
