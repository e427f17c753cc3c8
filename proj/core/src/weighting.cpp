#include "tpe/weighting.hpp"

#include <algorithm>
#include <cmath>

#include "tpe/errors.hpp"
#include "tpe/math.hpp"

namespace tpe {

namespace {

void check_ranks(const std::vector<int> &query_ranks) {
  const int n = static_cast<int>(query_ranks.size());
  std::vector<bool> seen(n, false);
  for (int t : query_ranks) {
    if (t < 1 || t > n || seen[t - 1]) {
      throw DataError("query ranks must be a permutation of 1..N");
    }
    seen[t - 1] = true;
  }
}

WeightVector normalize(WeightVector w) {
  const double total = w.total();
  if (!(total > 0.0)) throw DataError("weights sum to zero");
  w.prior /= total;
  for (double &v : w.observations) v /= total;
  return w;
}

} // namespace

void WeightConfig::validate() const {
  if (t_old < 1) throw ConfigError("weights.t_old must be >= 1");
  if (!(prior_weight > 0.0)) throw ConfigError("weights.prior_weight must be > 0");
}

double WeightVector::total() const {
  double acc = has_prior ? prior : 0.0;
  for (double v : observations) acc += v;
  return acc;
}

std::vector<double> WeightVector::flat() const {
  std::vector<double> out;
  out.reserve(size());
  if (has_prior) out.push_back(prior);
  out.insert(out.end(), observations.begin(), observations.end());
  return out;
}

WeightVector weights_uniform(int n_group, bool include_prior) {
  if (n_group < 0) throw DataError("group size must be >= 0");
  if (n_group == 0 && !include_prior) throw DataError("empty mixture has no weights");
  const double w = 1.0 / (n_group + (include_prior ? 1 : 0));
  WeightVector out;
  out.has_prior = include_prior;
  out.prior = include_prior ? w : 0.0;
  out.observations.assign(n_group, w);
  return out;
}

WeightVector weights_old_decay(const std::vector<int> &query_ranks, int t_old,
                               bool include_prior) {
  check_ranks(query_ranks);
  const int n = static_cast<int>(query_ranks.size());
  if (n == 0) return weights_uniform(0, include_prior);
  if (t_old < 1) throw ConfigError("t_old must be >= 1");
  // The decay window covers everything: identical to uniform.
  if (n <= t_old) return weights_uniform(n, include_prior);

  // Entries are indexed by query order t over 1..N+1 with the prior as the
  // oldest (t = 1); observation ranks shift up by one when a prior is
  // present. Raw weight: 1 for t > N + 1 - t_old, else tau + (1 - tau)/(N+1)
  // with tau(t) = (t - 1) / (N - t_old).
  const auto raw = [&](int t) {
    if (t > n + 1 - t_old) return 1.0;
    const double tau = static_cast<double>(t - 1) / (n - t_old);
    return tau + (1.0 - tau) / (n + 1);
  };

  WeightVector out;
  out.has_prior = include_prior;
  out.prior = include_prior ? raw(1) : 0.0;
  out.observations.reserve(query_ranks.size());
  for (int rank : query_ranks) {
    out.observations.push_back(raw(include_prior ? rank + 1 : rank));
  }
  return normalize(std::move(out));
}

WeightVector weights_old_drop(const std::vector<int> &query_ranks, int t_old,
                              bool include_prior) {
  check_ranks(query_ranks);
  const int n = static_cast<int>(query_ranks.size());
  if (n == 0) return weights_uniform(0, include_prior);
  if (t_old < 1) throw ConfigError("t_old must be >= 1");

  const int n_kept = std::min(t_old, n);
  WeightVector out;
  out.has_prior = include_prior;
  out.prior = include_prior ? 1.0 : 0.0;
  out.observations.reserve(query_ranks.size());
  for (int rank : query_ranks) {
    out.observations.push_back(rank > n - n_kept ? 1.0 : 0.0);
  }
  return normalize(std::move(out));
}

WeightVector weights_ei(const std::vector<double> &group_values, double y_gamma,
                        bool include_prior) {
  const int n = static_cast<int>(group_values.size());
  if (n == 0) return weights_uniform(0, include_prior);
  if (!std::isfinite(y_gamma)) throw DataError("y_gamma must be finite");

  double improvement_sum = 0.0;
  for (double y : group_values) {
    if (!std::isfinite(y)) throw DataError("objective values must be finite");
    if (y > y_gamma) throw DataError("EI weights require y <= y_gamma");
    improvement_sum += y_gamma - y;
  }
  if (improvement_sum == 0.0) return weights_uniform(n, include_prior);

  WeightVector out;
  out.has_prior = include_prior;
  if (include_prior) {
    // Denominator (1 + 1/N) * sum makes the total exactly 1 with the prior
    // carrying the mean improvement.
    const double denom = (1.0 + 1.0 / n) * improvement_sum;
    out.prior = (improvement_sum / n) / denom;
    for (double y : group_values) out.observations.push_back((y_gamma - y) / denom);
  } else {
    for (double y : group_values) {
      out.observations.push_back((y_gamma - y) / improvement_sum);
    }
  }
  return out;
}

WeightVector weights_bohb_uniform(const std::vector<double> &centers,
                                  const std::vector<double> &bandwidths,
                                  double low, double high, bool include_prior) {
  if (centers.size() != bandwidths.size()) {
    throw ConfigError("centers and bandwidths must have equal length");
  }
  const auto mass = [&](double center, double bandwidth) {
    if (!(bandwidth > 0.0)) throw ConfigError("bandwidth must be positive");
    return math::norm_cdf((high - center) / bandwidth) -
           math::norm_cdf((low - center) / bandwidth);
  };
  std::vector<double> obs_mass;
  obs_mass.reserve(centers.size());
  for (std::size_t i = 0; i < centers.size(); ++i) {
    obs_mass.push_back(mass(centers[i], bandwidths[i]));
  }
  const double prior_mass = include_prior ? mass(0.5 * (low + high), high - low) : 0.0;
  return weights_proportional(obs_mass, prior_mass, include_prior);
}

WeightVector weights_proportional(const std::vector<double> &observation_mass,
                                  double prior_mass, bool include_prior) {
  if (observation_mass.empty() && !include_prior) {
    throw DataError("empty mixture has no weights");
  }
  WeightVector out;
  out.has_prior = include_prior;
  out.prior = include_prior ? prior_mass : 0.0;
  out.observations = observation_mass;
  for (double m : out.observations) {
    if (m < 0.0) throw DataError("weight masses must be nonnegative");
  }
  return normalize(std::move(out));
}

WeightVector apply_prior_weight(WeightVector weights, double prior_weight) {
  if (!(prior_weight > 0.0)) throw ConfigError("prior_weight must be > 0");
  if (!weights.has_prior) throw ConfigError("apply_prior_weight needs a prior entry");
  if (prior_weight == 1.0) return weights;
  weights.prior *= prior_weight;
  return normalize(std::move(weights));
}

} // namespace tpe
