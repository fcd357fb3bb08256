#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bnndep/estimators.hpp"
#include "bnndep/experiments.hpp"

namespace bnndep {

enum class CriterionStatus { kPass, kFail, kWarn };

std::string to_string(CriterionStatus status);

struct CriterionResult {
  int id = 0;
  std::string name;
  CriterionStatus status = CriterionStatus::kFail;
  nlohmann::ordered_json measured = nlohmann::ordered_json::object();
};

struct AcceptanceOptions {
  std::uint64_t master_seed = 42;
  std::size_t threads = 0;  // does not affect the report
  std::size_t n = 100000;
  std::size_t n_large = 1000000;  // Delta(0, 0) at H = 10
  std::size_t input_dim = 100;
  std::size_t grid_steps = 41;
  std::size_t repeated_seeds = 30;
  std::size_t tau_batches = 200;
};

struct AcceptanceRun {
  std::uint64_t master_seed = 42;
  std::vector<CriterionResult> criteria;
  std::map<std::string, DeltaGrid> grids;  // artifacts, keyed by cell_key or "sum_L2H2" / "diff_L2H2"

  bool passed() const;  // warnings do not fail the run
};

AcceptanceRun acceptance_suite(const AcceptanceOptions& options = {});

// Machine-readable report; contains no timings or thread counts.
nlohmann::ordered_json report_to_json(const AcceptanceRun& run);
// One "[PASS] C1 name" style line per criterion.
std::string report_to_text(const AcceptanceRun& run);

// Criterion 1 (and 7) evaluator: fails when any named grid has a significant
// cell of the wrong sign. Exposed so a corrupted grid can be fed in.
CriterionResult check_quadrant_signs(int id, std::string name, const std::map<std::string, const DeltaGrid*>& grids);

}  // namespace bnndep
