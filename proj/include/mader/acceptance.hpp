#pragma once

#include "mader/report.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mader {

struct AcceptanceOptions {
  std::uint64_t seed = 20240611;
  int mc_samples = 10000;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  /// Every number the verdict was based on; compared byte-for-byte by the
  /// determinism criterion.
  Json data = Json::object();
};

inline constexpr int kCriterionCount = 12;

/// Runs one criterion, 1..12. Criterion 12 reruns 1..11 twice.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts = {});

/// Runs all criteria in order. Each line is written to log as it completes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {},
                                            std::ostream* log = nullptr);

/// "PASS [id] title: detail" or "FAIL [id] ...".
std::string format_result(const CriterionResult& result);

Json acceptance_json(const std::vector<CriterionResult>& results, const AcceptanceOptions& opts);

}  // namespace mader
