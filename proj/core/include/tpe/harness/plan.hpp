#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tpe/benchmarks.hpp"
#include "tpe/sampler.hpp"
#include "tpe/study_result.hpp"

namespace tpe::harness {

struct PlanEntry {
  std::string name;
  TpeConfig config;
};

// A batch of runs: every config is executed on every benchmark with every
// seed, n_trials evaluations each.
struct ExperimentPlan {
  std::vector<bench::BenchmarkSpec> benchmarks;
  std::vector<PlanEntry> configs;
  std::vector<std::uint64_t> seeds;
  int n_trials = 200;

  void validate() const;
};

// Plan file format: {"benchmarks": [...], "configs": [...], "seeds": ...,
// "n_trials": N}. Benchmarks are registry keys or {"name", "noise_std"}
// objects; seeds are a list or an "A..B" range string; each config entry names a
// "preset" and/or overrides individual keys (gamma.rule, gamma.beta,
// weights.rule, weights.t_old, weights.prior_weight, bandwidth.heuristic,
// bandwidth.consider_magic_clip, bandwidth.clip_rule, bandwidth.alpha,
// bandwidth.delta, bandwidth.consider_endpoints, bandwidth.categorical,
// multivariate, consider_prior, group, epsilon, n_startup_trials,
// n_ei_candidates).
ExperimentPlan plan_from_json(const std::string &text);

// Applies one flat config key to a TpeConfig; value is JSON-encoded.
void apply_config_key(TpeConfig &config, const std::string &key,
                      const std::string &json_value);

// Sequential execution with one independent stream per run (the run's seed
// seeds the study; observation noise, when enabled, uses a derived stream).
std::vector<StudyResult> run_plan(const ExperimentPlan &plan);

void write_results_jsonl(std::ostream &out, const ExperimentPlan &plan,
                         const std::vector<StudyResult> &results);

// Parses "0..9", "3", or "0,1,5" into a seed list.
std::vector<std::uint64_t> parse_seed_list(const std::string &text);

} // namespace tpe::harness
