#include "tpe/sampler.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>

#include "tpe/errors.hpp"
#include "tpe/math.hpp"

namespace tpe {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string gamma_rule_name(GammaRule rule) {
  return rule == GammaRule::linear ? "linear" : "sqrt";
}

std::string weight_rule_name(WeightRule rule) {
  switch (rule) {
  case WeightRule::uniform: return "uniform";
  case WeightRule::old_decay: return "old-decay";
  case WeightRule::old_drop: return "old-drop";
  case WeightRule::ei: return "ei";
  case WeightRule::bohb_uniform: return "bohb-uniform";
  }
  return "?";
}

std::string heuristic_name(BandwidthHeuristic h) {
  switch (h) {
  case BandwidthHeuristic::hyperopt: return "hyperopt";
  case BandwidthHeuristic::scott: return "scott";
  case BandwidthHeuristic::optuna: return "optuna";
  }
  return "?";
}

} // namespace

TpeConfig TpeConfig::recommended() {
  TpeConfig cfg;
  cfg.split = {GammaRule::linear, 0.15, std::nullopt};
  cfg.weights = {WeightRule::ei, 25, 1.0};
  cfg.bandwidth.heuristic = BandwidthHeuristic::hyperopt;
  cfg.bandwidth.consider_magic_clip = true;
  cfg.bandwidth.clip_rule = MagicClipRule::generalized;
  cfg.bandwidth.alpha = 2.0;
  cfg.bandwidth.delta = 0.03;
  cfg.bandwidth.fixed_categorical = std::nullopt; // count-based rule
  cfg.multivariate = true;
  cfg.consider_prior = true;
  return cfg;
}

TpeConfig TpeConfig::tpe_2011() {
  TpeConfig cfg;
  cfg.split = {GammaRule::linear, 0.15, 25};
  cfg.weights = {WeightRule::uniform, 25, 1.0};
  cfg.bandwidth.heuristic = BandwidthHeuristic::hyperopt;
  cfg.bandwidth.consider_magic_clip = true;
  cfg.bandwidth.clip_rule = MagicClipRule::legacy;
  cfg.bandwidth.delta = 0.0;
  cfg.bandwidth.fixed_categorical = 0.0;
  cfg.multivariate = false;
  return cfg;
}

TpeConfig TpeConfig::tpe_2013() {
  TpeConfig cfg = tpe_2011();
  cfg.split = {GammaRule::sqrt, 0.25, 25};
  cfg.weights.rule = WeightRule::old_decay;
  return cfg;
}

TpeConfig TpeConfig::bohb() {
  TpeConfig cfg;
  cfg.split = {GammaRule::linear, 0.15, std::nullopt};
  cfg.weights = {WeightRule::bohb_uniform, 25, 1.0};
  cfg.bandwidth.heuristic = BandwidthHeuristic::scott;
  cfg.bandwidth.consider_magic_clip = false;
  cfg.bandwidth.delta = 0.0;
  cfg.bandwidth.fixed_categorical = std::nullopt;
  cfg.multivariate = true;
  return cfg;
}

TpeConfig TpeConfig::optuna_v3() {
  TpeConfig cfg;
  cfg.split = {GammaRule::linear, 0.10, std::nullopt};
  cfg.weights = {WeightRule::old_decay, 25, 1.0};
  cfg.bandwidth.heuristic = BandwidthHeuristic::optuna;
  cfg.bandwidth.consider_magic_clip = true;
  cfg.bandwidth.clip_rule = MagicClipRule::legacy;
  cfg.bandwidth.delta = 0.0;
  cfg.bandwidth.fixed_categorical = std::nullopt;
  cfg.multivariate = true;
  return cfg;
}

TpeConfig TpeConfig::pure_random() {
  TpeConfig cfg = recommended();
  cfg.epsilon = 1.0;
  return cfg;
}

const std::vector<std::string> &TpeConfig::preset_names() {
  static const std::vector<std::string> names = {"recommended", "tpe2011", "tpe2013",
                                                 "bohb",        "optuna",  "random"};
  return names;
}

TpeConfig TpeConfig::preset(const std::string &name) {
  if (name == "recommended") return recommended();
  if (name == "tpe2011") return tpe_2011();
  if (name == "tpe2013") return tpe_2013();
  if (name == "bohb") return bohb();
  if (name == "optuna") return optuna_v3();
  if (name == "random") return pure_random();
  throw ConfigError("unknown preset '" + name + "'");
}

std::map<std::string, std::string> TpeConfig::describe() const {
  std::map<std::string, std::string> out;
  out["multivariate"] = multivariate ? "true" : "false";
  out["consider_prior"] = consider_prior ? "true" : "false";
  out["group"] = group ? "true" : "false";
  out["epsilon"] = format_double(epsilon);
  out["n_startup_trials"] = std::to_string(n_startup_trials);
  out["n_ei_candidates"] = std::to_string(n_ei_candidates);
  out["gamma.rule"] = gamma_rule_name(split.rule);
  out["gamma.beta"] = format_double(split.beta);
  out["gamma.cap"] = split.better_group_cap ? std::to_string(*split.better_group_cap)
                                            : "none";
  out["weights.rule"] = weight_rule_name(weights.rule);
  out["weights.t_old"] = std::to_string(weights.t_old);
  out["weights.prior_weight"] = format_double(weights.prior_weight);
  out["bandwidth.heuristic"] = heuristic_name(bandwidth.heuristic);
  out["bandwidth.consider_magic_clip"] = bandwidth.consider_magic_clip ? "true" : "false";
  out["bandwidth.clip_rule"] =
      bandwidth.clip_rule == MagicClipRule::legacy ? "legacy" : "generalized";
  out["bandwidth.alpha"] = format_double(bandwidth.alpha);
  out["bandwidth.delta"] = format_double(bandwidth.delta);
  out["bandwidth.consider_endpoints"] = bandwidth.consider_endpoints ? "true" : "false";
  out["bandwidth.categorical"] = bandwidth.fixed_categorical
                                     ? format_double(*bandwidth.fixed_categorical)
                                     : "optuna";
  return out;
}

void TpeConfig::validate() const {
  if (n_startup_trials < 1) throw ConfigError("n_startup_trials must be >= 1");
  if (n_ei_candidates < 1) throw ConfigError("n_ei_candidates must be >= 1");
  if (epsilon < 0.0 || epsilon > 1.0) throw ConfigError("epsilon must lie in [0, 1]");
  split.validate();
  weights.validate();
  bandwidth.validate();
}

Study::Study(SearchSpace space, TpeConfig config)
    : space_(std::move(space)), config_(std::move(config)), rng_(config_.seed) {
  config_.validate();
}

std::vector<int> Study::model_dims() const {
  if (!space_.has_conditions()) {
    std::vector<int> dims(space_.size());
    for (int d = 0; d < space_.size(); ++d) dims[d] = d;
    return dims;
  }
  // Without group mode only the always-active dimensions are modelled;
  // conditional dimensions are resolved randomly around the model's pick.
  return space_.unconditional_dims();
}

Study::Models Study::build_models(const std::vector<int> &dims,
                                  const Dataset &data) const {
  SplitResult sp = split(data, config_.split);
  KdeConfig kc;
  kc.variant = config_.multivariate ? KdeVariant::multivariate : KdeVariant::univariate;
  kc.consider_prior = config_.consider_prior;
  kc.weights = config_.weights;
  kc.bandwidth = config_.bandwidth;
  KdeModel better = build_kde(sp.better, space_, dims, kc, GroupSide::better, sp.y_gamma);
  KdeModel worse = build_kde(sp.worse, space_, dims, kc, GroupSide::worse, sp.y_gamma);
  return Models{std::move(better), std::move(worse), sp.gamma, dims};
}

Study::Models Study::build_current_models() const {
  if (trials_.empty()) throw DataError("no observations to model yet");
  if (config_.group && space_.has_conditions()) {
    auto groups = enumerate_subspaces(space_, trials_);
    const SubspaceGroup *best = nullptr;
    for (const auto &g : groups) {
      if (!best || g.observation_indices.size() > best->observation_indices.size()) {
        best = &g;
      }
    }
    Dataset subset;
    subset.reserve(best->observation_indices.size());
    for (int idx : best->observation_indices) subset.push_back(trials_[idx]);
    return build_models(best->dims, subset);
  }
  return build_models(model_dims(), trials_);
}

Configuration Study::complete_configuration(const std::vector<int> &model_dims,
                                            const Configuration &model_values) {
  Configuration out(space_.size());
  std::vector<char> in_model(space_.size(), 0);
  for (int d : model_dims) in_model[d] = 1;
  for (int d : space_.sampling_order()) {
    if (!space_.condition_active(d, out)) continue; // stays null
    if (in_model[d] && !model_values.is_null(d)) {
      out.values[d] = model_values.at(d);
    } else {
      out.values[d] = space_.random_dim_value(d, rng_);
    }
  }
  return out;
}

Configuration Study::ask() {
  const int n = static_cast<int>(trials_.size());
  if (n < config_.n_startup_trials) return space_.random_sample(rng_);
  if (config_.epsilon >= 1.0) return space_.random_sample(rng_);
  if (config_.epsilon > 0.0 && rng_.uniform01() < config_.epsilon) {
    return space_.random_sample(rng_);
  }

  std::vector<int> dims;
  Dataset subset;
  const Dataset *data = &trials_;
  if (config_.group && space_.has_conditions()) {
    auto groups = enumerate_subspaces(space_, trials_);
    const SubspaceGroup *best = nullptr;
    for (const auto &g : groups) {
      if (!best || g.observation_indices.size() > best->observation_indices.size()) {
        best = &g;
      }
    }
    // Subspaces with under two observations cannot be split meaningfully.
    if (!best || best->observation_indices.size() < 2) {
      return space_.random_sample(rng_);
    }
    dims = best->dims;
    subset.reserve(best->observation_indices.size());
    for (int idx : best->observation_indices) subset.push_back(trials_[idx]);
    data = &subset;
  } else {
    dims = model_dims();
  }

  if (!config_.consider_prior) {
    // An empty worse group has no density without the prior basis.
    if (split(*data, config_.split).worse.empty()) return space_.random_sample(rng_);
  }

  Models models = build_models(dims, *data);
  Configuration best_candidate;
  double best_score = neg_inf;
  for (int s = 0; s < config_.n_ei_candidates; ++s) {
    Configuration candidate = models.better.sample(rng_);
    const double score = log_density_ratio(models.better, models.worse, candidate);
    if (score > best_score) {
      best_score = score;
      best_candidate = std::move(candidate);
    }
  }
  return complete_configuration(dims, best_candidate);
}

void Study::tell(const Configuration &config, double value) {
  space_.validate(config);
  if (!std::isfinite(value)) value = penalty_value;
  trials_.push_back(Observation{config, value, static_cast<int>(trials_.size()) + 1});
}

double Study::acquisition(const Configuration &config) const {
  const Models models = build_current_models();
  return log_density_ratio(models.better, models.worse, config);
}

double Study::pi_value(const Configuration &config) const {
  const Models models = build_current_models();
  return pi_from_models(models.better, models.worse, models.gamma, config);
}

double log_density_ratio(const KdeModel &better, const KdeModel &worse,
                         const Configuration &config) {
  return better.log_pdf(config) - worse.log_pdf(config);
}

double pi_from_models(const KdeModel &better, const KdeModel &worse, double gamma,
                      const Configuration &config) {
  const double la = std::log(gamma) + better.log_pdf(config);
  const double lb = std::log(1.0 - gamma) + worse.log_pdf(config);
  return std::exp(la - math::log_add_exp(la, lb));
}

StudyResult optimize(Study &study,
                     const std::function<double(const Configuration &)> &objective,
                     int n_trials) {
  if (n_trials < 1) throw ConfigError("n_trials must be >= 1");
  StudyResult result;
  result.seed = study.config().seed;
  result.trials.reserve(n_trials);
  result.cumulative_min.reserve(n_trials);
  double best = std::numeric_limits<double>::infinity();
  for (int t = 1; t <= n_trials; ++t) {
    const auto start = std::chrono::steady_clock::now();
    Configuration config = study.ask();
    double value;
    try {
      value = objective(config);
    } catch (const std::exception &) {
      value = Study::penalty_value;
    }
    study.tell(config, value);
    const double stored = study.trials().back().value;
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    best = std::min(best, stored);
    result.trials.push_back(
        TrialRecord{t, std::move(config), stored, std::nullopt, elapsed.count()});
    result.cumulative_min.push_back(best);
  }
  return result;
}

} // namespace tpe
