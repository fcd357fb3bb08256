#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "bnndep/estimators.hpp"
#include "bnndep/experiments.hpp"

namespace bnndep::cli {

// Shortest round-trip decimal form.
std::string format_real(double x);
// 17 significant digits.
std::string format_real17(double x);

// Header z1,z2,delta,std_error,n then one row per cell, z1-major.
void write_grid_csv(const DeltaGrid& grid, std::ostream& out);
void write_grid_csv(const DeltaGrid& grid, const std::filesystem::path& path);
DeltaGrid read_grid_csv(std::istream& in);
DeltaGrid read_grid_csv(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const EstimateWithError& e);
nlohmann::ordered_json to_json(const GridSummary& s);
// GridSummary of every cell, keyed by L{depth}H{width}.
nlohmann::ordered_json summary_json(const SweepResult& result);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace bnndep::cli
