#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include "bnndep/errors.hpp"
#include "bnndep_cli/app.hpp"
#include "bnndep_cli/grid_io.hpp"
#include "bnndep_cli/heatmap.hpp"
#include "bnndep_cli/run_config.hpp"

using namespace bnndep;
using namespace bnndep::cli;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "bnndep");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::path(::testing::TempDir()) / ("bnndep_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

DeltaGrid grid_of(std::vector<double> values, std::size_t rows, std::size_t cols) {
  DeltaGrid g;
  g.z1_values = make_axis(-1.0, 1.0, rows);
  g.z2_values = make_axis(-1.0, 1.0, cols);
  for (double v : values) g.cells.push_back({v, 0.001, 100});
  return g;
}

// fill colours of the heatmap cells, in document order
std::vector<std::string> cell_fills(const std::string& svg) {
  const auto start = svg.find("<g shape-rendering");
  const auto end = svg.find("</g>", start);
  const std::string body = svg.substr(start, end - start);
  std::vector<std::string> fills;
  const std::regex fill("fill=\"(#[0-9a-f]{6})\"");
  for (auto it = std::sregex_iterator(body.begin(), body.end(), fill); it != std::sregex_iterator(); ++it) {
    fills.push_back((*it)[1]);
  }
  return fills;
}

}  // namespace

TEST(RunConfigTest, DefaultsRoundTrip) {
  const auto doc = to_json(RunConfig{});
  EXPECT_EQ(to_json(run_config_from_json(nlohmann::json::parse(doc.dump()))).dump(), doc.dump());
  EXPECT_EQ(doc["n"], 100000);
  EXPECT_EQ(doc["output"]["color_limit"], nullptr);
}

TEST(RunConfigTest, RejectsUnknownAndMistypedKeys) {
  EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"sweeps": 1})")), ConfigError);
  EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"grid": {"step": 3}})")), ConfigError);
  EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"prior": {"kind": "gaussian"}})")), ConfigError);
  EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"n": "many"})")), ConfigError);
  EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"n": -5})")), ConfigError);
  EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"widths": [1]})")), ConfigError);
  EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"activation": "swish"})")), ConfigError);
  EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"prior": {"family": "student-t", "nu": 1.5}})")),
               ConfigError);
  EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"([1, 2])")), ConfigError);
}

TEST(RunConfigTest, PartialDocumentKeepsDefaults) {
  const RunConfig c = run_config_from_json(nlohmann::json::parse(R"({"n": 500, "prior": {"sigma0": 2.0}})"));
  EXPECT_EQ(c.sweep.n, 500u);
  EXPECT_EQ(c.sweep.prior.sigma0, 2.0);
  EXPECT_EQ(c.sweep.widths, (std::vector<std::size_t>{2, 5, 10}));
}

TEST(GridCsv, RoundTripIsBitExact) {
  const DeltaGrid g = grid_of({1.0 / 3.0, -1e-300, 0.1, -0.0, 5e-324, 2.0 / 7.0}, 2, 3);
  std::stringstream s;
  write_grid_csv(g, s);
  const DeltaGrid back = read_grid_csv(s);
  EXPECT_EQ(back.z1_values, g.z1_values);
  EXPECT_EQ(back.z2_values, g.z2_values);
  ASSERT_EQ(back.cells.size(), g.cells.size());
  for (std::size_t i = 0; i < g.cells.size(); ++i) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(back.cells[i].value), std::bit_cast<std::uint64_t>(g.cells[i].value));
    EXPECT_EQ(back.cells[i].std_error, g.cells[i].std_error);
    EXPECT_EQ(back.cells[i].n, g.cells[i].n);
  }
}

TEST(GridCsv, ShapeAndHeader) {
  std::ostringstream one, big;
  write_grid_csv(grid_of({0.5}, 1, 1), one);
  EXPECT_EQ(one.str(), "z1,z2,delta,std_error,n\n-1,-1,0.5,0.001,100\n");
  write_grid_csv(grid_of(std::vector<double>(41 * 41, 0.0), 41, 41), big);
  EXPECT_EQ(count_lines(big.str()), 1682u);
  std::istringstream bad("z1,z2,delta\n");
  EXPECT_THROW(read_grid_csv(bad), std::runtime_error);
}

TEST(Heatmap, ColourAnchors) {
  EXPECT_EQ(diverging_color(0.0), (Rgb{255, 255, 255}));
  const Rgb red = diverging_color(1.0), blue = diverging_color(-1.0);
  EXPECT_GT(red[0], red[2]);
  EXPECT_GT(blue[2], blue[0]);
  EXPECT_EQ(diverging_color(5.0), red);
  // redness grows with t
  for (double t = 0.1; t <= 1.0; t += 0.1) {
    const Rgb lo = diverging_color(t - 0.1), hi = diverging_color(t);
    EXPECT_LE(hi[1], lo[1]);
  }
}

TEST(Heatmap, ZeroGridIsAllWhite) {
  const std::string svg = render_heatmap(grid_of(std::vector<double>(9, 0.0), 3, 3));
  const auto fills = cell_fills(svg);
  ASSERT_EQ(fills.size(), 9u);
  for (const auto& f : fills) EXPECT_EQ(f, "#ffffff");
  EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
  EXPECT_NE(svg.find("z₁"), std::string::npos);
  EXPECT_NE(svg.find("z₂"), std::string::npos);
}

TEST(Heatmap, SinglePositiveCellIsTheRedOne) {
  std::vector<double> v(12, -0.001);
  v[7] = 0.002;
  const auto fills = cell_fills(render_heatmap(grid_of(v, 3, 4)));
  ASSERT_EQ(fills.size(), 12u);
  for (std::size_t i = 0; i < fills.size(); ++i) {
    const int r = std::stoi(fills[i].substr(1, 2), nullptr, 16);
    const int b = std::stoi(fills[i].substr(5, 2), nullptr, 16);
    if (i == 7) {
      EXPECT_GT(r, b);
    } else {
      EXPECT_LT(r, b);
    }
  }
}

TEST(Heatmap, DeterministicAndHonoursColourLimit) {
  const DeltaGrid g = grid_of({0.01, -0.02, 0.03, 0.0}, 2, 2);
  EXPECT_EQ(render_heatmap(g), render_heatmap(g));
  HeatmapOptions wide;
  wide.color_limit = 1.0;
  const auto pinned = cell_fills(render_heatmap(g, wide));
  const auto own = cell_fills(render_heatmap(g));
  EXPECT_NE(pinned[2], own[2]);
  EXPECT_EQ(own[2], "#b2182b");
  EXPECT_THROW(render_heatmap(DeltaGrid{}), std::invalid_argument);
}

TEST(Cli, OracleDeltaAtOrigin) {
  const auto r = invoke({"oracle", "delta00", "--width", "2"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "0.046875\n");
  EXPECT_EQ(invoke({"oracle", "enumerate"}).out, "1/16 0.0625\n");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"sweep", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(invoke({"oracle", "delta00"}).code, kExitUsage);
  const auto r = invoke({"sweep", "--widths", "1", "--out", scratch("usage").string()});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("widths"), std::string::npos);
  EXPECT_EQ(invoke({"delta", "--n", "100"}).code, kExitUsage);  // no single network picked
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(Cli, SweepWritesArtifacts) {
  const fs::path dir = scratch("sweep");
  const auto r = invoke({"sweep", "--depths", "2", "--widths", "2", "--n", "1000", "--out", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(count_lines(slurp(dir / "grid_L2H2.csv")), 1682u);
  EXPECT_TRUE(fs::exists(dir / "heatmap_L2H2.svg"));
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  EXPECT_TRUE(summary.contains("L2H2"));
  EXPECT_TRUE(summary["L2H2"].contains("peakedness"));
}

TEST(Cli, PrintedConfigReproducesTheRun) {
  const fs::path a = scratch("cfg_a"), b = scratch("cfg_b");
  const std::vector<std::string> flags{"--depths", "2,3", "--widths", "3", "--n", "800", "--seed", "17",
                                       "--z-steps", "7", "--sigma0", "2"};
  std::vector<std::string> print{"print-config"};
  print.insert(print.end(), flags.begin(), flags.end());
  print.insert(print.end(), {"--out", a.string()});
  const auto printed = invoke(print);
  ASSERT_EQ(printed.code, kExitOk);
  const fs::path cfg = b / "config_in.json";
  std::ofstream(cfg) << printed.out;

  ASSERT_EQ(invoke({"sweep", "--config", cfg.string(), "--threads", "1"}).code, kExitOk);
  std::vector<std::string> direct{"sweep"};
  direct.insert(direct.end(), flags.begin(), flags.end());
  direct.insert(direct.end(), {"--out", b.string(), "--threads", "2"});
  ASSERT_EQ(invoke(direct).code, kExitOk);
  for (const char* f : {"grid_L2H3.csv", "grid_L3H3.csv", "heatmap_L3H3.svg", "summary.json"}) {
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
}

TEST(Cli, DeltaMatchesSweepCell) {
  const fs::path dir = scratch("delta");
  ASSERT_EQ(invoke({"sweep", "--depths", "2", "--widths", "3", "--n", "500", "--no-svg", "--out", dir.string()}).code,
            kExitOk);
  EXPECT_FALSE(fs::exists(dir / "heatmap_L2H3.svg"));
  const auto r = invoke({"delta", "--depth", "2", "--width", "3", "--n", "500"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, slurp(dir / "grid_L2H3.csv"));
  const auto sum = invoke({"delta", "--depth", "2", "--width", "3", "--n", "500", "--combo", "sum"});
  EXPECT_EQ(sum.code, kExitOk);
  EXPECT_NE(sum.out, r.out);
}

TEST(Cli, ConcordanceAndPdEmitJson) {
  const auto c = invoke({"concordance", "--depth", "2", "--width", "2", "--n", "300"});
  ASSERT_EQ(c.code, kExitOk) << c.err;
  const auto doc = nlohmann::json::parse(c.out);
  EXPECT_EQ(doc["n"], 300);
  EXPECT_TRUE(doc.contains("kendall_tau"));
  const auto p = invoke({"pd", "--depth", "2", "--width", "3", "--n", "400", "--points", "5"});
  ASSERT_EQ(p.code, kExitOk) << p.err;
  EXPECT_EQ(nlohmann::json::parse(p.out)["profile"].size(), 5u);
}
