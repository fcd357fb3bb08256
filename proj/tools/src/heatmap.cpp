#include "bnndep_cli/heatmap.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bnndep_cli/grid_io.hpp"

namespace bnndep::cli {
namespace {

constexpr Rgb kBlue{33, 102, 172};
constexpr Rgb kWhite{255, 255, 255};
constexpr Rgb kRed{178, 24, 43};

constexpr int kCell = 12;
constexpr int kLeft = 64;
constexpr int kTop = 40;
constexpr int kBottom = 56;
constexpr int kBarGap = 24;
constexpr int kBarWidth = 16;
constexpr int kRight = 96;

std::uint8_t lerp(std::uint8_t a, std::uint8_t b, double t) {
  return static_cast<std::uint8_t>(std::lround(a + (static_cast<double>(b) - a) * t));
}

std::string hex(const Rgb& c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string label(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 4);
  return std::string(buf, res.ptr);
}

}  // namespace

Rgb diverging_color(double t) {
  if (std::isnan(t)) return kWhite;
  t = std::clamp(t, -1.0, 1.0);
  const Rgb& end = t < 0.0 ? kBlue : kRed;
  const double s = std::abs(t);
  return {lerp(kWhite[0], end[0], s), lerp(kWhite[1], end[1], s), lerp(kWhite[2], end[2], s)};
}

std::string render_heatmap(const DeltaGrid& grid, const HeatmapOptions& options) {
  if (grid.cells.empty() || grid.cells.size() != grid.rows() * grid.cols()) {
    throw std::invalid_argument("render_heatmap: empty or malformed grid");
  }
  double limit = 0.0;
  if (options.color_limit) {
    limit = *options.color_limit;
  } else {
    for (const auto& c : grid.cells) limit = std::max(limit, std::abs(c.value));
  }

  const int nx = static_cast<int>(grid.rows());  // z1
  const int ny = static_cast<int>(grid.cols());  // z2
  const int plot_w = nx * kCell;
  const int plot_h = ny * kCell;
  const int width = kLeft + plot_w + kBarGap + kBarWidth + kRight;
  const int height = kTop + plot_h + kBottom;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
  if (!options.title.empty()) {
    svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kTop - 16 << "\" text-anchor=\"middle\" font-size=\"13\">"
        << escape(options.title) << "</text>\n";
  }

  svg << "<g shape-rendering=\"crispEdges\">\n";
  for (int a = 0; a < nx; ++a) {
    for (int b = 0; b < ny; ++b) {
      const double value = grid.at(static_cast<std::size_t>(a), static_cast<std::size_t>(b)).value;
      const double t = limit > 0.0 ? value / limit : 0.0;
      svg << "<rect x=\"" << kLeft + a * kCell << "\" y=\"" << kTop + (ny - 1 - b) * kCell << "\" width=\"" << kCell
          << "\" height=\"" << kCell << "\" fill=\"" << hex(diverging_color(t)) << "\"/>\n";
    }
  }
  svg << "</g>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#000000\"/>\n";

  // first, middle and last tick on each axis
  auto ticks = [](int count) {
    std::vector<int> idx{0};
    if (count > 2) idx.push_back((count - 1) / 2);
    if (count > 1) idx.push_back(count - 1);
    return idx;
  };
  const int axis_y = kTop + plot_h;
  for (int a : ticks(nx)) {
    const int x = kLeft + a * kCell + kCell / 2;
    svg << "<text x=\"" << x << "\" y=\"" << axis_y + 14 << "\" text-anchor=\"middle\">"
        << format_real(grid.z1_values[static_cast<std::size_t>(a)]) << "</text>\n";
  }
  for (int b : ticks(ny)) {
    const int y = kTop + (ny - 1 - b) * kCell + kCell / 2 + 4;
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << y << "\" text-anchor=\"end\">"
        << format_real(grid.z2_values[static_cast<std::size_t>(b)]) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << axis_y + 36 << "\" text-anchor=\"middle\" font-size=\"13\">"
      << "z₁</text>\n";
  svg << "<text x=\"" << kLeft - 44 << "\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
      << "transform=\"rotate(-90 " << kLeft - 44 << ' ' << kTop + plot_h / 2 << ")\">z₂</text>\n";

  // colour bar, +limit at the top
  const int bar_x = kLeft + plot_w + kBarGap;
  constexpr int kSteps = 64;
  svg << "<g shape-rendering=\"crispEdges\">\n";
  for (int i = 0; i < kSteps; ++i) {
    const double t = 1.0 - 2.0 * (i + 0.5) / kSteps;
    const int y0 = kTop + plot_h * i / kSteps;
    const int y1 = kTop + plot_h * (i + 1) / kSteps;
    svg << "<rect x=\"" << bar_x << "\" y=\"" << y0 << "\" width=\"" << kBarWidth << "\" height=\"" << y1 - y0
        << "\" fill=\"" << hex(diverging_color(t)) << "\"/>\n";
  }
  svg << "</g>\n";
  svg << "<rect x=\"" << bar_x << "\" y=\"" << kTop << "\" width=\"" << kBarWidth << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#000000\"/>\n";
  const int label_x = bar_x + kBarWidth + 4;
  svg << "<text x=\"" << label_x << "\" y=\"" << kTop + 4 << "\">" << label(limit) << "</text>\n";
  svg << "<text x=\"" << label_x << "\" y=\"" << kTop + plot_h / 2 + 4 << "\">0</text>\n";
  svg << "<text x=\"" << label_x << "\" y=\"" << kTop + plot_h + 4 << "\">" << label(limit > 0.0 ? -limit : 0.0) << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void render_heatmap(const DeltaGrid& grid, const std::filesystem::path& path, const HeatmapOptions& options) {
  write_text_file(path, render_heatmap(grid, options));
}

}  // namespace bnndep::cli
