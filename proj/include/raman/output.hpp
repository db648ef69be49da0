#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "raman/core.hpp"
#include "raman/oracle.hpp"
#include "raman/sweeps.hpp"

namespace raman {

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { csv, json };
Format parse_format(std::string_view s);
std::string_view format_extension(Format f);

// Shortest text that reads back to the same double.
std::string format_double(double x);

std::string to_csv(const Table& t);
// {"columns": [...], "rows": [[...], ...]}; mirrors the CSV cell for cell.
std::string to_json(const Table& t);
std::string render(const Table& t, Format f);

// Temp file in the same directory, then rename. Refuses to replace an existing
// file unless `force`.
void write_atomic(const std::filesystem::path& path, const std::string& content, bool force);

// Wide layout: gt, then one column per series.
Table series_table(const std::vector<WitnessSeries>& series);
Table panel_table(const FigurePanel& panel);
// spec, gt, closed_form, oracle, abs_diff, order
Table validation_table(const ValidationReport& rep);
// t, gt, then re/im of f1..f8, g1..g6, h1..h8, l1..l6
Table coefficient_table(const RamanParams& p, const std::vector<double>& gt);

}  // namespace raman
