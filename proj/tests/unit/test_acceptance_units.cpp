#include <cmath>

#include <gtest/gtest.h>

#include "bnndep/acceptance.hpp"

using namespace bnndep;

namespace {

DeltaGrid real_grid() {
  SweepSpec s;
  s.depths = {2};
  s.widths = {2};
  s.input_dim = 30;
  s.n = 20000;
  s.grid.steps = 21;
  s.master_seed = 8;
  return run_sweep(s).at({2, 2}).grid;
}

}  // namespace

TEST(QuadrantCheck, PassesOnRealGridAndCatchesInjectedFlip) {
  DeltaGrid grid = real_grid();
  const CriterionResult clean = check_quadrant_signs(1, "signs", {{"L2H2", &grid}});
  ASSERT_EQ(clean.status, CriterionStatus::kPass) << clean.measured.dump();

  std::size_t worst = 0;
  double best_ratio = 0.0;
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    const double r = std::abs(grid.cells[i].value) / grid.cells[i].std_error;
    if (r > best_ratio) {
      best_ratio = r;
      worst = i;
    }
  }
  ASSERT_GT(best_ratio, kSignSignificance);
  grid.cells[worst].value = -grid.cells[worst].value;
  const CriterionResult broken = check_quadrant_signs(1, "signs", {{"L2H2", &grid}});
  EXPECT_EQ(broken.status, CriterionStatus::kFail);
  EXPECT_EQ(broken.measured["total_violations"], 1);
}

TEST(Report, TextAndJson) {
  AcceptanceRun run;
  run.master_seed = 9;
  run.criteria.push_back({1, "first", CriterionStatus::kPass, {}});
  run.criteria.push_back({12, "soft", CriterionStatus::kWarn, {{"x", 1}}});
  EXPECT_TRUE(run.passed());
  const std::string text = report_to_text(run);
  EXPECT_NE(text.find("[PASS] C1 first\n"), std::string::npos);
  EXPECT_NE(text.find("[WARN] C12 soft\n"), std::string::npos);
  EXPECT_NE(text.find("all criteria passed"), std::string::npos);

  run.criteria.push_back({3, "hard", CriterionStatus::kFail, {}});
  EXPECT_FALSE(run.passed());
  const auto json = report_to_json(run);
  EXPECT_EQ(json["seed"], 9);
  EXPECT_EQ(json["passed"], false);
  EXPECT_EQ(json["criteria"][1]["status"], "warn");
  EXPECT_EQ(json["criteria"][2]["status"], "fail");
  EXPECT_NE(report_to_text(run).find("[FAIL] C3 hard"), std::string::npos);
}

TEST(Suite, ReducedRunHasEveryCriterionAndIsThreadIndependent) {
  AcceptanceOptions o;
  o.n = 2000;
  o.n_large = 4000;
  o.input_dim = 20;
  o.grid_steps = 9;
  o.repeated_seeds = 4;
  o.tau_batches = 10;
  o.threads = 1;
  const AcceptanceRun a = acceptance_suite(o);
  o.threads = 3;
  const AcceptanceRun b = acceptance_suite(o);
  ASSERT_EQ(a.criteria.size(), 14u);
  for (int i = 0; i < 14; ++i) EXPECT_EQ(a.criteria[static_cast<std::size_t>(i)].id, i + 1);
  EXPECT_EQ(report_to_json(a).dump(), report_to_json(b).dump());
  EXPECT_EQ(a.grids.size(), 14u);
  EXPECT_TRUE(a.grids.contains("sum_L2H2"));
  EXPECT_TRUE(a.grids.contains("L1H10"));
}
