#include "tpe/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tpe/errors.hpp"
#include "tpe/math.hpp"

namespace tpe {

TruncatedNormal::TruncatedNormal(double center, double bandwidth, double low,
                                 double high)
    : center_(center), bandwidth_(bandwidth), low_(low), high_(high) {
  if (!(low < high)) throw ConfigError("truncated normal requires low < high");
  if (!(bandwidth > 0.0)) throw ConfigError("bandwidth must be positive");
  if (center < low || center > high) {
    throw ConfigError("kernel center must lie inside [low, high]");
  }
  cdf_low_ = math::norm_cdf((low_ - center_) / bandwidth_);
  cdf_high_ = math::norm_cdf((high_ - center_) / bandwidth_);
  log_mass_ = std::log(cdf_high_ - cdf_low_);
}

void TruncatedNormal::check_in_domain(double x) const {
  if (x < low_ || x > high_) {
    throw DomainError("evaluation point " + std::to_string(x) + " outside [" +
                      std::to_string(low_) + ", " + std::to_string(high_) + "]");
  }
}

double TruncatedNormal::pdf(double x) const { return std::exp(log_pdf(x)); }

double TruncatedNormal::log_pdf(double x) const {
  check_in_domain(x);
  const double z = (x - center_) / bandwidth_;
  return math::norm_log_pdf(z) - std::log(bandwidth_) - log_mass_;
}

double TruncatedNormal::cdf(double x) const {
  check_in_domain(x);
  const double f = math::norm_cdf((x - center_) / bandwidth_);
  return (f - cdf_low_) / (cdf_high_ - cdf_low_);
}

double TruncatedNormal::sample(RandomStream &rng) const {
  const double u = rng.uniform01();
  const double q = cdf_low_ + u * (cdf_high_ - cdf_low_);
  const double x = center_ + bandwidth_ * math::norm_ppf(q);
  return std::clamp(x, low_, high_);
}

DiscretizedNormal::DiscretizedNormal(double center, double bandwidth,
                                     DiscreteDomain grid)
    : center_(center), bandwidth_(bandwidth), grid_(grid) {
  if (grid_.count < 1) throw ConfigError("grid needs at least one point");
  if (grid_.count > 1 && !(bandwidth > 0.0)) {
    throw ConfigError("bandwidth must be positive");
  }
  cumulative_.resize(grid_.count);
  if (grid_.count == 1) {
    cumulative_[0] = 1.0;
    return;
  }
  const double half = 0.5 * grid_.step;
  const double z_low = math::norm_cdf((grid_.low - half - center_) / bandwidth_);
  const double z_high = math::norm_cdf((grid_.high() + half - center_) / bandwidth_);
  const double mass = z_high - z_low;
  double prev = z_low;
  double acc = 0.0;
  for (int i = 0; i < grid_.count; ++i) {
    const double edge = math::norm_cdf((grid_.value_at(i) + half - center_) / bandwidth_);
    acc += (edge - prev) / mass;
    cumulative_[i] = acc;
    prev = edge;
  }
  cumulative_.back() = 1.0;
}

DiscretizedNormal DiscretizedNormal::at_index(const DiscreteDomain &grid, int index,
                                              double bandwidth) {
  if (index < 0 || index >= grid.count) throw ConfigError("grid index out of range");
  return DiscretizedNormal(grid.value_at(index), bandwidth, grid);
}

double DiscretizedNormal::pmf(int index) const {
  if (index < 0 || index >= grid_.count) {
    throw DomainError("grid index " + std::to_string(index) + " out of range");
  }
  return index == 0 ? cumulative_[0] : cumulative_[index] - cumulative_[index - 1];
}

double DiscretizedNormal::log_pmf(int index) const { return std::log(pmf(index)); }

int DiscretizedNormal::sample(RandomStream &rng) const {
  const double u = rng.uniform01();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const int idx = static_cast<int>(it - cumulative_.begin());
  return std::min(idx, grid_.count - 1);
}

AitchisonAitken::AitchisonAitken(int center, int n_choices, double bandwidth)
    : center_(center), n_choices_(n_choices), bandwidth_(bandwidth) {
  if (n_choices < 1) throw ConfigError("need at least one category");
  if (center < 0 || center >= n_choices) throw ConfigError("category out of range");
  if (n_choices == 1) {
    if (bandwidth != 0.0) {
      throw ConfigError("categorical bandwidth must be 0 when there is one choice");
    }
    return;
  }
  if (bandwidth < 0.0 || bandwidth > 1.0) {
    throw ConfigError("categorical bandwidth must lie in [0, 1]");
  }
}

AitchisonAitken AitchisonAitken::uniform(int n_choices) {
  if (n_choices < 1) throw ConfigError("need at least one category");
  const double b = static_cast<double>(n_choices - 1) / n_choices;
  return AitchisonAitken(0, n_choices, b);
}

double AitchisonAitken::pmf(int category) const {
  if (category < 0 || category >= n_choices_) {
    throw DomainError("category " + std::to_string(category) + " out of range");
  }
  if (n_choices_ == 1) return 1.0;
  return category == center_ ? 1.0 - bandwidth_ : bandwidth_ / (n_choices_ - 1);
}

double AitchisonAitken::log_pmf(int category) const { return std::log(pmf(category)); }

int AitchisonAitken::sample(RandomStream &rng) const {
  if (n_choices_ == 1) return 0;
  if (rng.uniform01() < 1.0 - bandwidth_) return center_;
  const int other = rng.uniform_int(n_choices_ - 1);
  return other >= center_ ? other + 1 : other;
}

} // namespace tpe
