#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tpe/search_space.hpp"
#include "tpe/study_result.hpp"

namespace tpe::harness {

// One JSON line per study. Numeric fields survive a serialize/parse cycle
// bit-exact; `elapsed` carries wall-clock time and is excluded from
// determinism comparisons. Categorical parameters are written as their label
// when the space declares labels, as the index otherwise; inactive
// conditional dimensions are written as null.
std::string result_to_json_line(const StudyResult &result, const SearchSpace &space,
                                const std::map<std::string, std::string> &config_params);

StudyResult result_from_json_line(const std::string &line, const SearchSpace &space);

// The slice of a result record the analysis operations need; readable
// without knowing the search space.
struct RunSummary {
  std::string config;
  std::string benchmark;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> config_params;
  std::vector<double> cumulative_min;
};

std::vector<RunSummary> read_summaries_jsonl(std::istream &in);

// Rewrites a JSONL stream with every elapsed field zeroed; used for
// byte-level determinism comparisons.
std::string strip_timing_jsonl(std::istream &in);

} // namespace tpe::harness
