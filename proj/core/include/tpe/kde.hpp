#pragma once

#include <limits>
#include <variant>
#include <vector>

#include "tpe/bandwidth.hpp"
#include "tpe/kernels.hpp"
#include "tpe/search_space.hpp"
#include "tpe/weighting.hpp"

namespace tpe {

// univariate:   p(x) = prod_d sum_n w_n k_d(x_d, x_{n,d})
// multivariate: p(x) = sum_n w_n prod_d k_d(x_d, x_{n,d})
enum class KdeVariant { univariate, multivariate };

enum class GroupSide { better, worse };

struct KdeConfig {
  KdeVariant variant = KdeVariant::multivariate;
  bool consider_prior = true;
  WeightConfig weights;
  BandwidthConfig bandwidth;
};

// Weighted mixture of per-observation kernel bases plus an optional
// non-informative prior basis (wide truncated Gaussian on numerical
// dimensions, uniform pmf on categorical ones). Immutable once built;
// log_pdf may be evaluated concurrently, sample needs an exclusive stream.
class KdeModel {
public:
  double log_pdf(const Configuration &config) const;

  // Draws one point: the multivariate variant picks a single basis for all
  // dimensions, the univariate variant an independent basis per dimension.
  // Only the model's dimensions are filled in.
  Configuration sample(RandomStream &rng) const;

  KdeVariant variant() const { return variant_; }
  const std::vector<int> &dims() const { return dims_; }
  const WeightVector &weights() const { return weights_; }
  std::size_t n_bases() const { return flat_weights_.size(); }

private:
  friend KdeModel build_kde(const Dataset &, const SearchSpace &,
                            const std::vector<int> &, const KdeConfig &,
                            GroupSide, double);

  using DimBases = std::variant<std::vector<TruncatedNormal>,
                                std::vector<DiscretizedNormal>,
                                std::vector<AitchisonAitken>>;
  struct DimModel {
    int dim;
    DimBases bases; // index 0 is the prior basis when the model has one
  };

  double basis_log_density(const DimModel &dm, std::size_t basis,
                           double value) const;
  double basis_sample(const DimModel &dm, std::size_t basis,
                      RandomStream &rng) const;
  std::size_t pick_basis(RandomStream &rng) const;

  KdeVariant variant_ = KdeVariant::multivariate;
  int n_space_dims_ = 0;
  std::vector<int> dims_;
  std::vector<DimModel> dim_models_;
  WeightVector weights_;
  std::vector<double> flat_weights_;
  std::vector<double> cumulative_weights_;
};

// Builds the KDE for one group. `dims` selects the modelled dimensions
// (every group observation must have them active); `side` selects which
// group-specific weighting applies; `y_gamma` is the split threshold and is
// required for EI weights on the better side.
KdeModel build_kde(const Dataset &group, const SearchSpace &space,
                   const std::vector<int> &dims, const KdeConfig &config,
                   GroupSide side,
                   double y_gamma = std::numeric_limits<double>::quiet_NaN());

} // namespace tpe
