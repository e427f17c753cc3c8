#include "tpe/splitting.hpp"

#include <algorithm>
#include <cmath>

#include "tpe/errors.hpp"

namespace tpe {

void SplitConfig::validate() const {
  if (rule == GammaRule::linear) {
    if (!(beta > 0.0) || beta > 1.0) {
      throw ConfigError("linear gamma requires beta in (0, 1]");
    }
  } else {
    if (!(beta > 0.0)) throw ConfigError("sqrt gamma requires beta > 0");
  }
  if (better_group_cap && *better_group_cap < 1) {
    throw ConfigError("better-group cap must be >= 1");
  }
}

double compute_gamma(const SplitConfig &config, int n_observations) {
  config.validate();
  if (n_observations < 1) throw DataError("compute_gamma needs N >= 1");
  if (config.rule == GammaRule::linear) return config.beta;
  return std::min(config.beta / std::sqrt(static_cast<double>(n_observations)), 1.0);
}

SplitResult split(const Dataset &data, const SplitConfig &config) {
  if (data.empty()) throw DataError("cannot split an empty dataset");
  const int n = static_cast<int>(data.size());
  const double gamma = compute_gamma(config, n);

  Dataset sorted(data);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Observation &a, const Observation &b) {
                     return a.value < b.value;
                   });

  // ceil(gamma * N) with a guard against one-ulp overshoot of exact integers.
  int n_better = static_cast<int>(std::ceil(gamma * n - 1e-9));
  n_better = std::clamp(n_better, 1, n);
  if (config.better_group_cap) n_better = std::min(n_better, *config.better_group_cap);

  SplitResult result;
  result.gamma = gamma;
  result.n_better = n_better;
  result.better.assign(sorted.begin(), sorted.begin() + n_better);
  result.worse.assign(sorted.begin() + n_better, sorted.end());
  result.y_gamma = result.better.back().value;
  return result;
}

} // namespace tpe
