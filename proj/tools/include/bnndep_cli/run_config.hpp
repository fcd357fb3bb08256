#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "bnndep/experiments.hpp"

namespace bnndep::cli {

// Everything a sweep needs, plus where and how to write it. Serialized as a
// JSON object; unknown keys are rejected at every level.
struct RunConfig {
  SweepSpec sweep;
  std::string output_dir = "bnndep-out";
  bool write_svg = true;
  std::optional<double> color_limit;  // unset: per-grid +-max|Delta|
};

nlohmann::ordered_json to_json(const RunConfig& config);
// Throws ConfigError on unknown keys, wrong types or invalid values.
RunConfig run_config_from_json(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace bnndep::cli
