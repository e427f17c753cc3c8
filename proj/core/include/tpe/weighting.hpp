#pragma once

#include <vector>

namespace tpe {

enum class WeightRule { uniform, old_decay, old_drop, ei, bohb_uniform };

struct WeightConfig {
  WeightRule rule = WeightRule::uniform;
  int t_old = 25;
  double prior_weight = 1.0;

  void validate() const;
};

// Normalized mixture weights for one KDE: the prior basis (when present)
// plus one weight per observation, in group order. Sums to 1.
struct WeightVector {
  bool has_prior = false;
  double prior = 0.0;
  std::vector<double> observations;

  double total() const;
  std::size_t size() const { return observations.size() + (has_prior ? 1 : 0); }
  // Flat view: prior first when present, then observations.
  std::vector<double> flat() const;
};

// Every entry (prior included) gets 1 / (N + [prior]).
WeightVector weights_uniform(int n_group, bool include_prior);

// Weights decay linearly with age. `query_ranks` holds each observation's
// age rank inside the group, 1 = oldest .. N = youngest; the prior acts as
// the oldest entry. With N <= t_old every raw weight is 1 and the result
// equals the uniform rule.
WeightVector weights_old_decay(const std::vector<int> &query_ranks, int t_old,
                               bool include_prior);

// The youngest min(t_old, N) observations plus the prior share the weight
// uniformly; older observations get exactly 0.
WeightVector weights_old_drop(const std::vector<int> &query_ranks, int t_old,
                              bool include_prior);

// Expected-improvement weights for the better group: w_n proportional to
// y_gamma - y_n, the prior carrying the mean improvement. Falls back to
// uniform when every improvement is zero.
WeightVector weights_ei(const std::vector<double> &group_values, double y_gamma,
                        bool include_prior);

// Weights proportional to each basis' truncation mass on [low, high]; the
// prior participates with its own mass (center (L+R)/2, bandwidth R-L).
WeightVector weights_bohb_uniform(const std::vector<double> &centers,
                                  const std::vector<double> &bandwidths,
                                  double low, double high, bool include_prior);

// Normalizes raw nonnegative masses into a WeightVector.
WeightVector weights_proportional(const std::vector<double> &observation_mass,
                                  double prior_mass, bool include_prior);

// Multiplies the prior's weight by `prior_weight` and renormalizes.
WeightVector apply_prior_weight(WeightVector weights, double prior_weight);

} // namespace tpe
