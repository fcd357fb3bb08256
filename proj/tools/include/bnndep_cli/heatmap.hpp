#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "bnndep/estimators.hpp"

namespace bnndep::cli {

using Rgb = std::array<std::uint8_t, 3>;

// t in [-1, 1]: -1 blue, 0 white, +1 red. Values outside are clamped.
Rgb diverging_color(double t);

struct HeatmapOptions {
  std::optional<double> color_limit;  // unset: max |Delta| of the grid
  std::string title;
};

// SVG 1.1, one <rect> per cell; z1 runs left to right, z2 bottom to top.
std::string render_heatmap(const DeltaGrid& grid, const HeatmapOptions& options = {});
void render_heatmap(const DeltaGrid& grid, const std::filesystem::path& path, const HeatmapOptions& options = {});

}  // namespace bnndep::cli
