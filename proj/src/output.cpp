#include "raman/output.hpp"

#include <unistd.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include "json.hpp"

#include "raman/coefficients.hpp"
#include "raman/errors.hpp"

namespace raman {

Format parse_format(std::string_view s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ConfigError("expected csv or json, got \"" + std::string(s) + "\"", "format");
}

std::string_view format_extension(Format f) { return f == Format::csv ? ".csv" : ".json"; }

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_double(*d);
  return csv_field(std::get<std::string>(c));
}

}  // namespace

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + csv_field(t.columns[i]);
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& t) {
  nlohmann::ordered_json j;
  j["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      if (const double* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d)) r.push_back(*d);
        else r.push_back(nullptr);
      } else {
        r.push_back(std::get<std::string>(c));
      }
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(1) + "\n";
}

std::string render(const Table& t, Format f) { return f == Format::csv ? to_csv(t) : to_json(t); }

void write_atomic(const std::filesystem::path& path, const std::string& content, bool force) {
  namespace fs = std::filesystem;
  if (fs::exists(path) && !force)
    throw ConfigError("refusing to overwrite " + path.string() + " (use --force)", "out");
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw ConfigError("cannot open " + tmp.string() + " for writing", "out");
    os << content;
    os.flush();
    if (!os) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw ConfigError("write failed for " + tmp.string(), "out");
    }
  }
  fs::rename(tmp, path);
}

Table series_table(const std::vector<WitnessSeries>& series) {
  Table t;
  t.columns.push_back("gt");
  for (const auto& s : series) t.columns.push_back(series_label(s));
  if (series.empty()) return t;
  const auto& gt = series.front().times;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    std::vector<Cell> row{gt[i]};
    for (const auto& s : series) row.emplace_back(s.values.at(i));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table panel_table(const FigurePanel& panel) {
  Table t;
  t.columns = panel.columns;
  for (const auto& r : panel.rows) t.rows.emplace_back(r.begin(), r.end());
  return t;
}

Table validation_table(const ValidationReport& rep) {
  Table t;
  t.columns = {"spec", "gt", "closed_form", "oracle", "abs_diff", "order"};
  for (const auto& r : rep.rows)
    t.rows.push_back({r.spec.to_string(), r.gt, r.closed_form, r.oracle, r.abs_diff, r.order});
  return t;
}

Table coefficient_table(const RamanParams& p, const std::vector<double>& gt) {
  Table t;
  t.columns = {"t", "gt"};
  auto add = [&](char c, int count) {
    for (int i = 1; i <= count; ++i) {
      t.columns.push_back(std::string(1, c) + std::to_string(i) + "_re");
      t.columns.push_back(std::string(1, c) + std::to_string(i) + "_im");
    }
  };
  add('f', 8);
  add('g', 6);
  add('h', 8);
  add('l', 6);
  for (double x : gt) {
    const double time = x / p.g;
    const CoefficientSet k = eval_coefficients(p, time);
    std::vector<Cell> row{time, x};
    auto push = [&](auto get, int count) {
      for (int i = 1; i <= count; ++i) {
        const cplx v = get(i);
        row.emplace_back(v.real());
        row.emplace_back(v.imag());
      }
    };
    push([&](int i) { return k.f(i); }, 8);
    push([&](int i) { return k.g(i); }, 6);
    push([&](int i) { return k.h(i); }, 8);
    push([&](int i) { return k.l(i); }, 6);
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace raman
