#pragma once

#include <vector>

#include "tpe/domain.hpp"
#include "tpe/random.hpp"

namespace tpe {

// Gaussian kernel basis truncated to [low, high]:
//   k(x) = g(x, center | bandwidth) / Z,  Z = integral of g over [low, high].
class TruncatedNormal {
public:
  TruncatedNormal(double center, double bandwidth, double low, double high);

  double pdf(double x) const;
  double log_pdf(double x) const;
  // CDF of the truncated distribution.
  double cdf(double x) const;
  // Inverse-CDF draw; always lands in [low, high].
  double sample(RandomStream &rng) const;

  double center() const { return center_; }
  double bandwidth() const { return bandwidth_; }
  // Mass the untruncated Gaussian assigns to [low, high].
  double truncation_mass() const { return cdf_high_ - cdf_low_; }

private:
  void check_in_domain(double x) const;

  double center_;
  double bandwidth_;
  double low_;
  double high_;
  double cdf_low_;
  double cdf_high_;
  double log_mass_;
};

// Gaussian kernel integrated over grid cells [x_i - q/2, x_i + q/2] and
// normalized over [low - q/2, high + q/2]. The center may sit between grid
// points (the prior basis uses the domain midpoint).
class DiscretizedNormal {
public:
  DiscretizedNormal(double center, double bandwidth, DiscreteDomain grid);
  static DiscretizedNormal at_index(const DiscreteDomain &grid, int index,
                                    double bandwidth);

  double pmf(int index) const;
  double log_pmf(int index) const;
  int sample(RandomStream &rng) const;

  double center() const { return center_; }
  double bandwidth() const { return bandwidth_; }
  const DiscreteDomain &grid() const { return grid_; }

private:
  double center_;
  double bandwidth_;
  DiscreteDomain grid_;
  std::vector<double> cumulative_; // inclusive cumulative pmf, size count
};

// Aitchison-Aitken kernel: 1 - b on the matching category, b / (C - 1) on
// every other.
class AitchisonAitken {
public:
  AitchisonAitken(int center, int n_choices, double bandwidth);
  // Uniform pmf over C choices (b = (C - 1) / C).
  static AitchisonAitken uniform(int n_choices);

  double pmf(int category) const;
  double log_pmf(int category) const;
  int sample(RandomStream &rng) const;

  int center() const { return center_; }
  double bandwidth() const { return bandwidth_; }

private:
  int center_;
  int n_choices_;
  double bandwidth_;
};

} // namespace tpe
