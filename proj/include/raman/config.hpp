#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "raman/output.hpp"
#include "raman/sweeps.hpp"

namespace raman {

struct RunPlan {
  SweepPlan sweep;
  ValidationPlan oracle;
  Format format = Format::csv;
  bool operator==(const RunPlan&) const = default;
};

// ConfigError with line/column for YAML syntax errors and the dotted field
// name for semantic ones. Unknown keys are errors.
RunPlan load_config(const std::filesystem::path& path);
RunPlan parse_config(std::string_view text, const std::string& source = "<config>");
std::string serialize_config(const RunPlan& plan);

// "0", "1.2", "pi", "-pi/2", "3pi/4", "0.5pi".
double parse_phase(std::string_view text);
// Comma-separated phases.
std::vector<double> parse_phase_list(std::string_view text);
// Specs separated by ';' or whitespace ("hz1:ab:2,1;three:abc").
std::vector<WitnessSpec> parse_spec_list(std::string_view text);
// "7,5,5,5"
std::array<int, 4> parse_cutoffs(std::string_view text);

}  // namespace raman
