#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tpe/kde.hpp"
#include "tpe/random.hpp"
#include "tpe/search_space.hpp"
#include "tpe/splitting.hpp"
#include "tpe/study_result.hpp"

namespace tpe {

// The full control-parameter vector of the sampler. The default-constructed
// config is the recommended setting; the named presets reproduce the
// component choices of the historical implementations.
struct TpeConfig {
  int n_startup_trials = 10;
  int n_ei_candidates = 24;
  SplitConfig split;
  WeightConfig weights;
  BandwidthConfig bandwidth;
  bool multivariate = true;
  bool consider_prior = true;
  bool group = false;
  double epsilon = 0.0; // probability of replacing the model step with a random draw
  std::uint64_t seed = 42;

  static TpeConfig recommended();
  static TpeConfig tpe_2011();
  static TpeConfig tpe_2013();
  static TpeConfig bohb();
  static TpeConfig optuna_v3();
  static TpeConfig pure_random(); // epsilon = 1
  // Lookup by name: recommended | tpe2011 | tpe2013 | bohb | optuna | random.
  static TpeConfig preset(const std::string &name);
  static const std::vector<std::string> &preset_names();

  // Effective control parameters as config-key/value strings, for
  // introspection, persistence and the analysis tooling.
  std::map<std::string, std::string> describe() const;

  void validate() const;
};

// Ask/tell state of one optimization run. Single writer: ask/tell must be
// serialized externally; independent studies are fully isolated.
class Study {
public:
  Study(SearchSpace space, TpeConfig config);

  // Startup trials and epsilon-exploration are uniform random; otherwise
  // split -> weights -> bandwidths -> KDE pair -> sample n_ei_candidates
  // from the better model -> return the candidate with the best acquisition
  // value (ties broken by lowest sample index).
  Configuration ask();

  // Appends an observation. Non-finite objective values are clamped to
  // +1e300 so that downstream weighting stays defined.
  void tell(const Configuration &config, double value);

  // log p(x | better) - log p(x | worse) for the current trials.
  double acquisition(const Configuration &config) const;

  // Probability-of-improvement transform
  //   gamma p_l / (gamma p_l + (1 - gamma) p_g),
  // a strictly increasing function of the density ratio; diagnostics only.
  double pi_value(const Configuration &config) const;

  const Dataset &trials() const { return trials_; }
  const SearchSpace &space() const { return space_; }
  const TpeConfig &config() const { return config_; }

  static constexpr double penalty_value = 1e300;

private:
  struct Models {
    KdeModel better;
    KdeModel worse;
    double gamma;
    std::vector<int> dims;
  };
  Models build_models(const std::vector<int> &dims, const Dataset &data) const;
  Models build_current_models() const;
  // Dims modelled outside group mode, and the observations backing them.
  std::vector<int> model_dims() const;
  Configuration complete_configuration(const std::vector<int> &model_dims,
                                       const Configuration &model_values);

  SearchSpace space_;
  TpeConfig config_;
  Dataset trials_;
  RandomStream rng_;
};

// Free-function form of the acquisition for externally built model pairs.
double log_density_ratio(const KdeModel &better, const KdeModel &worse,
                         const Configuration &config);
double pi_from_models(const KdeModel &better, const KdeModel &worse, double gamma,
                      const Configuration &config);

// Runs ask/evaluate/tell for n_trials steps. Evaluator exceptions are
// recorded as the penalty value and the loop continues.
StudyResult optimize(Study &study,
                     const std::function<double(const Configuration &)> &objective,
                     int n_trials);

} // namespace tpe
