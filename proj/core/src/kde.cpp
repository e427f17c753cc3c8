#include "tpe/kde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tpe/errors.hpp"
#include "tpe/math.hpp"

namespace tpe {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// Age ranks within the group: 1 = oldest query, N = youngest.
std::vector<int> group_query_ranks(const Dataset &group) {
  std::vector<int> order(group.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return group[a].query_order < group[b].query_order;
  });
  std::vector<int> ranks(group.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    ranks[order[pos]] = static_cast<int>(pos) + 1;
  }
  return ranks;
}

// Per-observation bandwidths on one numerical axis. The prior participates
// as an extra center in every heuristic but keeps its fixed width R - L, so
// only the observation slots of the result are used.
std::vector<double> numerical_bandwidths(const std::vector<double> &obs_centers,
                                         double low, double high, bool with_prior,
                                         int n_model_dims,
                                         const BandwidthConfig &cfg) {
  const int n_obs = static_cast<int>(obs_centers.size());
  const int n_eff = n_obs + (with_prior ? 1 : 0);
  std::vector<double> centers(obs_centers);
  if (with_prior) centers.push_back(0.5 * (low + high));

  std::vector<double> widths(n_obs, 0.0);
  switch (cfg.heuristic) {
  case BandwidthHeuristic::hyperopt: {
    std::vector<int> order(centers.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return centers[a] < centers[b]; });
    std::vector<double> sorted(centers.size());
    for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = centers[order[i]];
    const auto by_position = bw_hyperopt(sorted, low, high, cfg.consider_endpoints);
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (order[i] < n_obs) widths[order[i]] = by_position[i];
    }
    break;
  }
  case BandwidthHeuristic::scott: {
    const double b = bw_scott(centers);
    std::fill(widths.begin(), widths.end(), b);
    break;
  }
  case BandwidthHeuristic::optuna: {
    const double b = bw_optuna_numerical(n_eff, n_model_dims, low, high);
    std::fill(widths.begin(), widths.end(), b);
    break;
  }
  }

  for (double &b : widths) {
    b = magic_clip(b, low, high, n_eff, cfg);
    // Keep the kernel well defined even when no floor is configured and the
    // raw bandwidth degenerated to zero (e.g. duplicate centers).
    b = std::max(b, 1e-12 * (high - low));
  }
  return widths;
}

} // namespace

double KdeModel::basis_log_density(const DimModel &dm, std::size_t basis,
                                   double value) const {
  if (const auto *tn = std::get_if<std::vector<TruncatedNormal>>(&dm.bases)) {
    return (*tn)[basis].log_pdf(value);
  }
  if (const auto *dn = std::get_if<std::vector<DiscretizedNormal>>(&dm.bases)) {
    const auto &kernel = (*dn)[basis];
    // Configurations hold the raw grid value; kernels index the grid.
    return kernel.log_pmf(kernel.grid().index_of(value));
  }
  const auto &aa = std::get<std::vector<AitchisonAitken>>(dm.bases);
  return aa[basis].log_pmf(static_cast<int>(value));
}

double KdeModel::basis_sample(const DimModel &dm, std::size_t basis,
                              RandomStream &rng) const {
  if (const auto *tn = std::get_if<std::vector<TruncatedNormal>>(&dm.bases)) {
    return (*tn)[basis].sample(rng);
  }
  if (const auto *dn = std::get_if<std::vector<DiscretizedNormal>>(&dm.bases)) {
    const auto &kernel = (*dn)[basis];
    return kernel.grid().value_at(kernel.sample(rng));
  }
  const auto &aa = std::get<std::vector<AitchisonAitken>>(dm.bases);
  return static_cast<double>(aa[basis].sample(rng));
}

std::size_t KdeModel::pick_basis(RandomStream &rng) const {
  const double u = rng.uniform01();
  const auto it = std::upper_bound(cumulative_weights_.begin(),
                                   cumulative_weights_.end(), u);
  const std::size_t idx = static_cast<std::size_t>(it - cumulative_weights_.begin());
  return std::min(idx, cumulative_weights_.size() - 1);
}

double KdeModel::log_pdf(const Configuration &config) const {
  const std::size_t n_bases = flat_weights_.size();
  if (variant_ == KdeVariant::multivariate) {
    std::vector<double> terms(n_bases, neg_inf);
    for (std::size_t n = 0; n < n_bases; ++n) {
      if (flat_weights_[n] == 0.0) continue;
      double acc = std::log(flat_weights_[n]);
      for (const auto &dm : dim_models_) {
        if (config.is_null(dm.dim)) {
          throw DomainError("configuration misses a modelled dimension");
        }
        acc += basis_log_density(dm, n, config.at(dm.dim));
        if (acc == neg_inf) break;
      }
      terms[n] = acc;
    }
    return math::log_sum_exp(terms);
  }

  double total = 0.0;
  std::vector<double> terms(n_bases);
  for (const auto &dm : dim_models_) {
    if (config.is_null(dm.dim)) {
      throw DomainError("configuration misses a modelled dimension");
    }
    const double value = config.at(dm.dim);
    for (std::size_t n = 0; n < n_bases; ++n) {
      terms[n] = flat_weights_[n] == 0.0
                     ? neg_inf
                     : std::log(flat_weights_[n]) + basis_log_density(dm, n, value);
    }
    total += math::log_sum_exp(terms);
  }
  return total;
}

Configuration KdeModel::sample(RandomStream &rng) const {
  Configuration config(n_space_dims_);
  if (variant_ == KdeVariant::multivariate) {
    const std::size_t basis = pick_basis(rng);
    for (const auto &dm : dim_models_) {
      config.values[dm.dim] = basis_sample(dm, basis, rng);
    }
  } else {
    for (const auto &dm : dim_models_) {
      config.values[dm.dim] = basis_sample(dm, pick_basis(rng), rng);
    }
  }
  return config;
}

KdeModel build_kde(const Dataset &group, const SearchSpace &space,
                   const std::vector<int> &dims, const KdeConfig &config,
                   GroupSide side, double y_gamma) {
  config.weights.validate();
  config.bandwidth.validate();
  if (dims.empty()) throw ConfigError("KDE needs at least one dimension");
  if (group.empty() && !config.consider_prior) {
    throw DataError("cannot build a KDE from an empty group without the prior");
  }
  for (const auto &obs : group) {
    for (int d : dims) {
      if (obs.config.is_null(d)) {
        throw DataError("group observation misses modelled dimension '" +
                        space.dim(d).name + "'");
      }
    }
  }

  const bool prior = config.consider_prior;
  const int n_obs = static_cast<int>(group.size());
  const int n_eff = n_obs + (prior ? 1 : 0);
  const int n_model_dims = static_cast<int>(dims.size());

  KdeModel model;
  model.variant_ = config.variant;
  model.n_space_dims_ = space.size();
  model.dims_ = dims;

  // Kernel bases per dimension; prior basis first when present. Numerical
  // prior: truncated Gaussian centered at (L+R)/2 with bandwidth R-L.
  for (int d : dims) {
    const ParamDomain &domain = space.dim(d).domain;
    KdeModel::DimModel dm;
    dm.dim = d;
    switch (domain.kind()) {
    case DomainKind::continuous: {
      const double low = domain.transformed_low();
      const double high = domain.transformed_high();
      std::vector<double> centers(n_obs);
      for (int i = 0; i < n_obs; ++i) centers[i] = group[i].config.at(d);
      const auto widths = numerical_bandwidths(centers, low, high, prior,
                                               n_model_dims, config.bandwidth);
      std::vector<TruncatedNormal> bases;
      bases.reserve(n_eff);
      if (prior) bases.emplace_back(0.5 * (low + high), high - low, low, high);
      for (int i = 0; i < n_obs; ++i) {
        bases.emplace_back(centers[i], widths[i], low, high);
      }
      dm.bases = std::move(bases);
      break;
    }
    case DomainKind::discrete: {
      const auto &grid = domain.as_discrete();
      const double low = grid.low;
      const double high = grid.high();
      std::vector<double> centers(n_obs);
      for (int i = 0; i < n_obs; ++i) centers[i] = group[i].config.at(d);
      std::vector<double> widths(n_obs, 0.0);
      if (grid.count > 1) {
        widths = numerical_bandwidths(centers, low, high, prior, n_model_dims,
                                      config.bandwidth);
      }
      std::vector<DiscretizedNormal> bases;
      bases.reserve(n_eff);
      if (prior) {
        bases.emplace_back(0.5 * (low + high), std::max(high - low, grid.step),
                           grid);
      }
      for (int i = 0; i < n_obs; ++i) {
        bases.emplace_back(centers[i], widths[i], grid);
      }
      dm.bases = std::move(bases);
      break;
    }
    case DomainKind::categorical: {
      const int n_choices = domain.as_categorical().n_choices;
      double b;
      if (n_choices == 1) {
        b = 0.0;
      } else if (config.bandwidth.fixed_categorical) {
        b = *config.bandwidth.fixed_categorical;
      } else {
        b = bw_optuna_categorical(n_eff, n_choices);
      }
      std::vector<AitchisonAitken> bases;
      bases.reserve(n_eff);
      if (prior) bases.push_back(AitchisonAitken::uniform(n_choices));
      for (int i = 0; i < n_obs; ++i) {
        bases.emplace_back(static_cast<int>(group[i].config.at(d)), n_choices, b);
      }
      dm.bases = std::move(bases);
      break;
    }
    }
    model.dim_models_.push_back(std::move(dm));
  }

  // Mixture weights: group-specific rules follow the side they are defined
  // for; everything else falls back to uniform.
  WeightVector weights;
  switch (config.weights.rule) {
  case WeightRule::uniform:
    weights = weights_uniform(n_obs, prior);
    break;
  case WeightRule::old_decay:
    weights = side == GroupSide::worse
                  ? weights_old_decay(group_query_ranks(group),
                                      config.weights.t_old, prior)
                  : weights_uniform(n_obs, prior);
    break;
  case WeightRule::old_drop:
    weights = side == GroupSide::worse
                  ? weights_old_drop(group_query_ranks(group),
                                     config.weights.t_old, prior)
                  : weights_uniform(n_obs, prior);
    break;
  case WeightRule::ei: {
    if (side == GroupSide::better && n_obs > 0) {
      if (std::isnan(y_gamma)) {
        throw ConfigError("EI weighting requires the split threshold y_gamma");
      }
      std::vector<double> values(n_obs);
      for (int i = 0; i < n_obs; ++i) values[i] = group[i].value;
      weights = weights_ei(values, y_gamma, prior);
    } else {
      weights = weights_uniform(n_obs, prior);
    }
    break;
  }
  case WeightRule::bohb_uniform: {
    // Mass of each product kernel over the domain box: the product of the
    // per-dimension truncation masses (categorical dims contribute 1).
    std::vector<double> obs_mass(n_obs, 1.0);
    double prior_mass = 1.0;
    bool any_numerical = false;
    for (const auto &dm : model.dim_models_) {
      if (const auto *tn = std::get_if<std::vector<TruncatedNormal>>(&dm.bases)) {
        any_numerical = true;
        std::size_t base = prior ? 1 : 0;
        if (prior) prior_mass *= (*tn)[0].truncation_mass();
        for (int i = 0; i < n_obs; ++i) {
          obs_mass[i] *= (*tn)[base + i].truncation_mass();
        }
      }
    }
    weights = any_numerical ? weights_proportional(obs_mass, prior_mass, prior)
                            : weights_uniform(n_obs, prior);
    break;
  }
  }
  if (prior) weights = apply_prior_weight(std::move(weights), config.weights.prior_weight);

  model.weights_ = std::move(weights);
  model.flat_weights_ = model.weights_.flat();
  model.cumulative_weights_.resize(model.flat_weights_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < model.flat_weights_.size(); ++i) {
    acc += model.flat_weights_[i];
    model.cumulative_weights_[i] = acc;
  }
  model.cumulative_weights_.back() = 1.0;
  return model;
}

} // namespace tpe
