#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tpe/search_space.hpp"

namespace tpe {

struct TrialRecord {
  int order; // 1-based
  Configuration params;
  double value;
  // Noiseless objective value, tracked when observation noise is enabled.
  std::optional<double> noiseless;
  double elapsed_seconds = 0.0;
};

// One completed optimization run. config_name/benchmark/seed locate the run
// inside an experiment plan; cumulative_min[n-1] is the best value seen in
// the first n trials.
struct StudyResult {
  std::string config_name;
  std::string benchmark;
  std::uint64_t seed = 0;
  std::vector<TrialRecord> trials;
  std::vector<double> cumulative_min;
};

} // namespace tpe
