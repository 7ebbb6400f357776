#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "gim/analysis.hpp"

namespace gim {

// JSON curve file:
//   {"manifold": "sphere", "dim_or_size": 3, "boundary": "periodic",
//    "points": [[1, 0, 0], [0, 1, 0], ...]}
// Every point is validated on load; the first offending index is reported.
// Numbers are written with 17 significant digits, so a write/read cycle
// reproduces every coordinate bit for bit.
CurveSequence parse_curve_json(std::string_view text);
std::string curve_to_json(const CurveSequence& curve);

CurveSequence read_curve_file(const std::filesystem::path& path);
void write_curve_file(const std::filesystem::path& path, const CurveSequence& curve);

// Mask configuration: {"coefficients": [...], "offset": -2, "name": "...", "mu": 0.5}.
// "name" and "mu" are optional.
struct MaskConfig {
  Mask mask;
  std::string name = "custom";
  std::optional<double> mu;
};

MaskConfig parse_mask_json(std::string_view text);
MaskConfig read_mask_file(const std::filesystem::path& path);
GimScheme scheme_from_config(const MaskConfig& config);

// Columns: level, delta, contractivity_ratio, max_displacement_ratio, cauchy_gap.
void write_diagnostics_csv(std::ostream& os, const DiagnosticsReport& report);

std::string format_double(double x);

}  // namespace gim
