#include "tpe/harness/plan.hpp"

#include <limits>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "tpe/errors.hpp"
#include "tpe/harness/serialization.hpp"

namespace tpe::harness {

namespace {

using nlohmann::json;

GammaRule gamma_rule_from(const std::string &name) {
  if (name == "linear") return GammaRule::linear;
  if (name == "sqrt") return GammaRule::sqrt;
  throw ConfigError("unknown gamma rule '" + name + "'");
}

WeightRule weight_rule_from(const std::string &name) {
  if (name == "uniform") return WeightRule::uniform;
  if (name == "old-decay" || name == "old_decay") return WeightRule::old_decay;
  if (name == "old-drop" || name == "old_drop") return WeightRule::old_drop;
  if (name == "ei") return WeightRule::ei;
  if (name == "bohb-uniform" || name == "bohb_uniform") return WeightRule::bohb_uniform;
  throw ConfigError("unknown weighting rule '" + name + "'");
}

BandwidthHeuristic heuristic_from(const std::string &name) {
  if (name == "hyperopt") return BandwidthHeuristic::hyperopt;
  if (name == "scott") return BandwidthHeuristic::scott;
  if (name == "optuna") return BandwidthHeuristic::optuna;
  throw ConfigError("unknown bandwidth heuristic '" + name + "'");
}

double alpha_from(const json &value) {
  if (value.is_string()) {
    if (value.get<std::string>() == "inf") {
      return std::numeric_limits<double>::infinity();
    }
    throw ConfigError("bandwidth.alpha must be a number or \"inf\"");
  }
  return value.get<double>();
}

void apply_key(TpeConfig &config, const std::string &key, const json &value) {
  if (key == "gamma.rule") {
    config.split.rule = gamma_rule_from(value.get<std::string>());
  } else if (key == "gamma.beta") {
    config.split.beta = value.get<double>();
  } else if (key == "gamma.cap") {
    if (value.is_null() || (value.is_string() && value.get<std::string>() == "none")) {
      config.split.better_group_cap.reset();
    } else {
      config.split.better_group_cap = value.get<int>();
    }
  } else if (key == "weights.rule") {
    config.weights.rule = weight_rule_from(value.get<std::string>());
  } else if (key == "weights.t_old") {
    config.weights.t_old = value.get<int>();
  } else if (key == "weights.prior_weight") {
    config.weights.prior_weight = value.get<double>();
  } else if (key == "bandwidth.heuristic") {
    config.bandwidth.heuristic = heuristic_from(value.get<std::string>());
  } else if (key == "bandwidth.consider_magic_clip") {
    config.bandwidth.consider_magic_clip = value.get<bool>();
  } else if (key == "bandwidth.clip_rule") {
    const std::string rule = value.get<std::string>();
    if (rule == "legacy") {
      config.bandwidth.clip_rule = MagicClipRule::legacy;
    } else if (rule == "generalized") {
      config.bandwidth.clip_rule = MagicClipRule::generalized;
    } else {
      throw ConfigError("unknown clip rule '" + rule + "'");
    }
  } else if (key == "bandwidth.alpha") {
    config.bandwidth.alpha = alpha_from(value);
  } else if (key == "bandwidth.delta") {
    config.bandwidth.delta = value.get<double>();
  } else if (key == "bandwidth.consider_endpoints") {
    config.bandwidth.consider_endpoints = value.get<bool>();
  } else if (key == "bandwidth.categorical") {
    if (value.is_string()) {
      if (value.get<std::string>() != "optuna") {
        throw ConfigError("bandwidth.categorical must be a number or \"optuna\"");
      }
      config.bandwidth.fixed_categorical.reset();
    } else {
      config.bandwidth.fixed_categorical = value.get<double>();
    }
  } else if (key == "multivariate") {
    config.multivariate = value.get<bool>();
  } else if (key == "consider_prior") {
    config.consider_prior = value.get<bool>();
  } else if (key == "group") {
    config.group = value.get<bool>();
  } else if (key == "epsilon") {
    config.epsilon = value.get<double>();
  } else if (key == "n_startup_trials") {
    config.n_startup_trials = value.get<int>();
  } else if (key == "n_ei_candidates") {
    config.n_ei_candidates = value.get<int>();
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

bench::BenchmarkSpec benchmark_from(const json &entry) {
  if (entry.is_string()) return bench::parse_benchmark(entry.get<std::string>());
  bench::BenchmarkSpec spec = bench::parse_benchmark(entry.at("name").get<std::string>());
  spec.noise_std = entry.value("noise_std", 0.0);
  if (spec.noise_std < 0.0) throw ConfigError("noise_std must be >= 0");
  return spec;
}

} // namespace

void ExperimentPlan::validate() const {
  if (benchmarks.empty()) throw ConfigError("plan needs at least one benchmark");
  if (configs.empty()) throw ConfigError("plan needs at least one config");
  if (seeds.empty()) throw ConfigError("plan needs at least one seed");
  std::set<std::string> names;
  for (const auto &entry : configs) {
    if (entry.name.empty()) throw ConfigError("config entries need a name");
    if (!names.insert(entry.name).second) {
      throw ConfigError("duplicate config name '" + entry.name + "'");
    }
    entry.config.validate();
    if (n_trials < entry.config.n_startup_trials) {
      throw ConfigError("n_trials must cover the startup trials of '" + entry.name + "'");
    }
  }
}

void apply_config_key(TpeConfig &config, const std::string &key,
                      const std::string &json_value) {
  json value;
  try {
    value = json::parse(json_value);
  } catch (const json::parse_error &) {
    value = json_value; // bare string
  }
  apply_key(config, key, value);
}

std::vector<std::uint64_t> parse_seed_list(const std::string &text) {
  std::vector<std::uint64_t> seeds;
  const auto range_pos = text.find("..");
  if (range_pos != std::string::npos) {
    const std::uint64_t first = std::stoull(text.substr(0, range_pos));
    const std::uint64_t last = std::stoull(text.substr(range_pos + 2));
    if (last < first) throw ConfigError("seed range must be ascending");
    for (std::uint64_t s = first; s <= last; ++s) seeds.push_back(s);
    return seeds;
  }
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const auto comma = text.find(',', begin);
    const std::string token =
        text.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin);
    if (!token.empty()) seeds.push_back(std::stoull(token));
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  if (seeds.empty()) throw ConfigError("empty seed list");
  return seeds;
}

ExperimentPlan plan_from_json(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ConfigError(std::string("invalid plan JSON: ") + e.what());
  }

  ExperimentPlan plan;
  for (const auto &entry : doc.at("benchmarks")) {
    plan.benchmarks.push_back(benchmark_from(entry));
  }

  const auto &seeds = doc.at("seeds");
  if (seeds.is_string()) {
    plan.seeds = parse_seed_list(seeds.get<std::string>());
  } else {
    for (const auto &s : seeds) plan.seeds.push_back(s.get<std::uint64_t>());
  }

  plan.n_trials = doc.value("n_trials", 200);

  for (const auto &entry : doc.at("configs")) {
    PlanEntry plan_entry;
    plan_entry.config = entry.contains("preset")
                            ? TpeConfig::preset(entry.at("preset").get<std::string>())
                            : TpeConfig::recommended();
    plan_entry.name = entry.value("name", entry.value("preset", ""));
    for (const auto &[key, value] : entry.items()) {
      if (key == "name" || key == "preset") continue;
      apply_key(plan_entry.config, key, value);
    }
    plan.configs.push_back(std::move(plan_entry));
  }

  plan.validate();
  return plan;
}

std::vector<StudyResult> run_plan(const ExperimentPlan &plan) {
  plan.validate();
  std::vector<StudyResult> results;
  results.reserve(plan.configs.size() * plan.benchmarks.size() * plan.seeds.size());
  for (const auto &entry : plan.configs) {
    for (const auto &spec : plan.benchmarks) {
      for (const std::uint64_t seed : plan.seeds) {
        StudyResult result;
        try {
          TpeConfig config = entry.config;
          config.seed = seed;
          Study study(bench::make_space(spec), config);
          RandomStream noise(derive_seed(seed, 0x6e6f697365));
          std::vector<double> noiseless;
          const auto objective = [&](const Configuration &c) {
            const double value = bench::evaluate_noiseless(spec, bench::to_point(spec, c));
            noiseless.push_back(value);
            return spec.noise_std > 0.0 ? value + spec.noise_std * noise.normal() : value;
          };
          result = optimize(study, objective, plan.n_trials);
          if (spec.noise_std > 0.0) {
            for (std::size_t i = 0; i < result.trials.size(); ++i) {
              result.trials[i].noiseless = noiseless[i];
            }
          }
        } catch (const std::exception &e) {
          // Record the failed cell and keep the batch going.
          result.trials.clear();
          result.cumulative_min.clear();
          result.config_name = entry.name + " [failed: " + e.what() + "]";
        }
        if (result.config_name.empty()) result.config_name = entry.name;
        result.benchmark = spec.name();
        result.seed = seed;
        results.push_back(std::move(result));
      }
    }
  }
  return results;
}

void write_results_jsonl(std::ostream &out, const ExperimentPlan &plan,
                         const std::vector<StudyResult> &results) {
  for (const auto &result : results) {
    const bench::BenchmarkSpec spec = bench::parse_benchmark(result.benchmark);
    const SearchSpace space = bench::make_space(spec);
    std::map<std::string, std::string> params;
    for (const auto &entry : plan.configs) {
      if (entry.name == result.config_name) {
        params = entry.config.describe();
        break;
      }
    }
    out << result_to_json_line(result, space, params) << '\n';
  }
}

} // namespace tpe::harness
