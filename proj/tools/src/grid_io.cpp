#include "bnndep_cli/grid_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bnndep/errors.hpp"

namespace bnndep::cli {

std::string format_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_real17(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_grid_csv(const DeltaGrid& grid, std::ostream& out) {
  out << "z1,z2,delta,std_error,n\n";
  for (std::size_t a = 0; a < grid.rows(); ++a) {
    for (std::size_t b = 0; b < grid.cols(); ++b) {
      const auto& c = grid.at(a, b);
      out << format_real17(grid.z1_values[a]) << ',' << format_real17(grid.z2_values[b]) << ','
          << format_real17(c.value) << ',' << format_real17(c.std_error) << ',' << c.n << '\n';
    }
  }
}

void write_grid_csv(const DeltaGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_grid_csv(grid, out);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

namespace {

template <typename T>
T parse_field(std::string_view field, std::size_t line) {
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw std::runtime_error("grid csv line " + std::to_string(line) + ": bad field '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

DeltaGrid read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "z1,z2,delta,std_error,n") throw std::runtime_error("grid csv: bad header");
  DeltaGrid grid;
  std::vector<double> z1s, z2s;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::string_view rest(line);
    std::string_view fields[5];
    for (int i = 0; i < 5; ++i) {
      const auto comma = rest.find(',');
      if ((comma == std::string_view::npos) != (i == 4)) {
        throw std::runtime_error("grid csv line " + std::to_string(lineno) + ": expected 5 fields");
      }
      fields[i] = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
    }
    z1s.push_back(parse_field<double>(fields[0], lineno));
    z2s.push_back(parse_field<double>(fields[1], lineno));
    grid.cells.push_back({parse_field<double>(fields[2], lineno), parse_field<double>(fields[3], lineno),
                          parse_field<std::size_t>(fields[4], lineno)});
  }
  if (grid.cells.empty()) throw std::runtime_error("grid csv: no data rows");

  std::size_t cols = 1;
  while (cols < z1s.size() && z1s[cols] == z1s[0]) ++cols;
  if (z1s.size() % cols != 0) throw std::runtime_error("grid csv: rows do not form a rectangle");
  grid.z2_values.assign(z2s.begin(), z2s.begin() + static_cast<std::ptrdiff_t>(cols));
  for (std::size_t i = 0; i < z1s.size(); i += cols) grid.z1_values.push_back(z1s[i]);
  for (std::size_t i = 0; i < z1s.size(); ++i) {
    if (z1s[i] != grid.z1_values[i / cols] || z2s[i] != grid.z2_values[i % cols]) {
      throw std::runtime_error("grid csv: rows are not z1-major");
    }
  }
  return grid;
}

DeltaGrid read_grid_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_grid_csv(in);
}

nlohmann::ordered_json to_json(const EstimateWithError& e) {
  return {{"value", e.value}, {"std_error", e.std_error}, {"n", e.n}};
}

nlohmann::ordered_json to_json(const GridSummary& s) {
  return {{"mean_abs", s.mean_abs},
          {"mean_std_error", s.mean_std_error},
          {"center_value", s.center_value},
          {"center_std_error", s.center_std_error},
          {"center_z1", s.center_z1},
          {"center_z2", s.center_z2},
          {"corner_mean_abs", s.corner_mean_abs},
          {"peakedness", s.peakedness},
          {"quadrant_sign_violations", s.quadrant_sign_violations}};
}

nlohmann::ordered_json summary_json(const SweepResult& result) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& [key, cell] : result) doc[cell_key(cell.depth, cell.width)] = to_json(cell.summary);
  return doc;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace bnndep::cli
