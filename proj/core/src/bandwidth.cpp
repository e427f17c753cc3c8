#include "tpe/bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tpe/errors.hpp"

namespace tpe {

namespace {

// Linear-interpolation (type-7) quantile of sorted values.
double quantile_type7(const std::vector<double> &sorted, double p) {
  const double h = (sorted.size() - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - lo) * (sorted[lo + 1] - sorted[lo]);
}

} // namespace

void BandwidthConfig::validate() const {
  if (delta < 0.0 || delta >= 1.0) {
    throw ConfigError("bandwidth.delta must lie in [0, 1)");
  }
  if (!(alpha > 0.0)) {
    throw ConfigError("bandwidth.alpha must be positive (or infinity)");
  }
  if (fixed_categorical && (*fixed_categorical < 0.0 || *fixed_categorical > 1.0)) {
    throw ConfigError("bandwidth.categorical must lie in [0, 1]");
  }
}

std::vector<double> bw_hyperopt(const std::vector<double> &sorted_centers,
                                double low, double high, bool consider_endpoints) {
  const std::size_t n = sorted_centers.size();
  if (n == 0) throw DataError("bw_hyperopt needs at least one center");
  for (std::size_t i = 0; i < n; ++i) {
    if (sorted_centers[i] < low || sorted_centers[i] > high) {
      throw ConfigError("center outside [low, high]");
    }
    if (i > 0 && sorted_centers[i] < sorted_centers[i - 1]) {
      throw ConfigError("centers must be sorted ascending");
    }
  }

  std::vector<double> bandwidths(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool has_left = i > 0 || consider_endpoints;
    const bool has_right = i + 1 < n || consider_endpoints;
    const double left = has_left
                            ? sorted_centers[i] - (i > 0 ? sorted_centers[i - 1] : low)
                            : -std::numeric_limits<double>::infinity();
    const double right = has_right
                             ? (i + 1 < n ? sorted_centers[i + 1] : high) - sorted_centers[i]
                             : -std::numeric_limits<double>::infinity();
    if (!has_left && !has_right) {
      // Lone center with no neighbors at all: fall back to the domain width.
      bandwidths[i] = high - low;
    } else {
      bandwidths[i] = std::max(left, right);
    }
  }
  return bandwidths;
}

double bw_scott(const std::vector<double> &centers) {
  const std::size_t n = centers.size();
  if (n == 0) throw DataError("bw_scott needs at least one center");

  double mean = 0.0;
  for (double c : centers) mean += c;
  mean /= n;
  double var = 0.0;
  for (double c : centers) var += (c - mean) * (c - mean);
  const double sigma = std::sqrt(var / n);

  std::vector<double> sorted(centers);
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile_type7(sorted, 0.75) - quantile_type7(sorted, 0.25);

  return 1.059 * std::pow(static_cast<double>(n), -0.2) * std::min(sigma, iqr / 1.34);
}

double bw_optuna_numerical(int n_observations, int n_dims, double low, double high) {
  if (n_observations < 1) throw DataError("bw_optuna_numerical needs N >= 1");
  if (n_dims < 1) throw ConfigError("bw_optuna_numerical needs D >= 1");
  return (high - low) / 5.0 *
         std::pow(static_cast<double>(n_observations), -1.0 / (n_dims + 4));
}

double bw_optuna_categorical(int n_observations, int n_choices) {
  if (n_observations < 1) throw DataError("bw_optuna_categorical needs N >= 1");
  if (n_choices < 1) throw ConfigError("bw_optuna_categorical needs C >= 1");
  const double n = n_observations;
  return (1.0 + 1.0 / n) / (1.0 + n_choices / n);
}

double magic_clip(double raw_bandwidth, double low, double high, int n_effective,
                  const BandwidthConfig &config) {
  if (n_effective < 1) throw DataError("magic_clip needs N >= 1");
  const double range = high - low;
  double b_magic = 0.0;
  if (config.consider_magic_clip) {
    if (config.clip_rule == MagicClipRule::legacy) {
      b_magic = range / std::min(100, n_effective);
    } else if (!std::isinf(config.alpha)) {
      b_magic = range / std::pow(static_cast<double>(n_effective), config.alpha);
    }
  }
  const double b_min = std::max(config.delta * range, b_magic);
  return std::max(raw_bandwidth, b_min);
}

} // namespace tpe
