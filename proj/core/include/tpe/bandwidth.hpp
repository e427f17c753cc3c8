#pragma once

#include <optional>
#include <vector>

namespace tpe {

enum class BandwidthHeuristic { hyperopt, scott, optuna };

// The floor applied to numerical bandwidths is
//   b_min = max(delta * (high - low), b_magic)
// where b_magic depends on the clip rule: (R - L) / N^alpha for the
// generalized rule, (R - L) / min(100, N) for the legacy one, and 0 when
// consider_magic_clip is off.
enum class MagicClipRule { generalized, legacy };

struct BandwidthConfig {
  BandwidthHeuristic heuristic = BandwidthHeuristic::hyperopt;
  bool consider_magic_clip = true;
  MagicClipRule clip_rule = MagicClipRule::generalized;
  double alpha = 1.0; // exponent of the generalized rule; may be +infinity
  double delta = 0.0; // minimum bandwidth factor
  bool consider_endpoints = false;
  // Categorical bandwidth: a fixed value in [0, 1], or nullopt for the
  // count-based rule bw_optuna_categorical.
  std::optional<double> fixed_categorical;

  void validate() const;
};

// Per-basis bandwidths from neighbor gaps: b_n = max(left gap, right gap),
// one-sided at the ends. With consider_endpoints the domain bounds act as
// virtual neighbors. Centers must be sorted ascending and inside [low, high].
std::vector<double> bw_hyperopt(const std::vector<double> &sorted_centers,
                                double low, double high, bool consider_endpoints);

// 1.059 * N^(-1/5) * min(sigma, IQR / 1.34). Sigma is the population standard
// deviation and the IQR uses linear-interpolation (type-7) quantiles; both
// conventions are fixed so results are reproducible. Returns 0 when all
// centers coincide.
double bw_scott(const std::vector<double> &centers);

// (R - L) / 5 * N^(-1 / (D + 4)).
double bw_optuna_numerical(int n_observations, int n_dims, double low, double high);

// (1 + 1/N) / (1 + C/N); equals 1 when C = 1 and is below 1 for C >= 2.
double bw_optuna_categorical(int n_observations, int n_choices);

// max(raw_bandwidth, b_min); see MagicClipRule. n_effective counts the prior
// basis when the KDE includes one.
double magic_clip(double raw_bandwidth, double low, double high, int n_effective,
                  const BandwidthConfig &config);

} // namespace tpe
