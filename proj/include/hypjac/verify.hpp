#pragma once

// The ten acceptance checks, each runnable on a subset of genera. Used by the
// acceptance binary (full genus ranges) and by `hypjac verify-all --g G`.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace hypjac {

enum class Verdict { Pass, Fail, Inconclusive, Skipped };
std::string to_string(Verdict v);

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<int> genera;  ///< genera actually checked
  Verdict verdict = Verdict::Skipped;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;
  /// Timings are left out unless asked for, so reports stay byte-identical.
  nlohmann::json to_json(bool with_timing = false) const;
};

struct CriterionSpec {
  int id;
  std::string title;
  std::vector<int> genera;  ///< full range checked by the acceptance suite
  double limit_seconds;
};

const std::vector<CriterionSpec>& criteria();

/// Runs criterion `id` on the intersection of `genera` with its own range.
/// An empty intersection yields Verdict::Skipped. A run that exceeds the
/// time limit fails.
CriterionResult run_criterion(int id, const std::vector<int>& genera, std::uint64_t seed = 1);

}  // namespace hypjac
