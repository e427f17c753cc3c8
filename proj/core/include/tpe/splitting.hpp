#pragma once

#include <optional>

#include "tpe/search_space.hpp"

namespace tpe {

enum class GammaRule { linear, sqrt };

struct SplitConfig {
  GammaRule rule = GammaRule::linear;
  double beta = 0.15;
  // Upper bound on the better-group size; the historical TPE presets use 25.
  std::optional<int> better_group_cap;

  void validate() const;
};

// gamma = beta (linear) or beta / sqrt(N) clamped to 1 (sqrt).
double compute_gamma(const SplitConfig &config, int n_observations);

struct SplitResult {
  double gamma;
  int n_better;
  double y_gamma; // largest objective value inside the better group
  Dataset better; // sorted ascending by objective, ties by insertion order
  Dataset worse;
};

SplitResult split(const Dataset &data, const SplitConfig &config);

} // namespace tpe
