// Runs every acceptance criterion at full scale and prints one line per
// criterion followed by the measured values. Exit status 1 on any failure.

#include <cstdlib>
#include <iostream>
#include <string>

#include "bnndep/acceptance.hpp"

int main(int argc, char** argv) {
  bnndep::AcceptanceOptions options;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--seed") options.master_seed = std::strtoull(argv[i + 1], nullptr, 10);
    else if (flag == "--threads") options.threads = std::strtoull(argv[i + 1], nullptr, 10);
  }
  const bnndep::AcceptanceRun run = bnndep::acceptance_suite(options);
  for (const auto& c : run.criteria) {
    std::cout << (c.status == bnndep::CriterionStatus::kFail ? "FAIL" : "PASS") << "  C" << c.id << "  " << c.name
              << (c.status == bnndep::CriterionStatus::kWarn ? "  (warning)" : "") << "\n";
  }
  std::cout << "\n" << bnndep::report_to_json(run).dump(2) << "\n";
  return run.passed() ? 0 : 1;
}
