#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tpe/harness/serialization.hpp"

namespace tpe::harness {

struct RankRow {
  int step;
  std::string method;
  double average_rank;
};

// For each benchmark and step: median cumulative minimum over seeds per
// method, methods ranked 1 = best with ties averaged, then the mean rank
// across benchmarks. Needs >= 2 methods on a common benchmark x seed grid;
// a missing cell raises DataError naming it.
std::vector<RankRow> average_rank(const std::vector<RunSummary> &results,
                                  const std::vector<int> &at_steps);

struct MassRow {
  std::string value;
  double mass;
};

// Distribution of one control parameter among the top-performing quantile of
// a config grid: per benchmark the configs are sorted by median cumulative
// minimum at `at_step`, the best ceil(alpha * K) survive, a per-benchmark
// distribution over the parameter's values is built (counting for
// categorical values, a Gaussian KDE with Scott bandwidth for numeric ones),
// distributions are averaged across benchmarks and normalized over the
// grid's choices. All benchmarks must cover the identical config grid.
std::vector<MassRow> top_quantile_mass(const std::vector<RunSummary> &results,
                                       double alpha, int at_step,
                                       const std::string &control_param);

// CSV emitters. Column order is part of the interface:
//   rank: step,method,average_rank   (ordered by step, then method)
//   mass: param,value,mass           (ordered by value)
void write_rank_csv(std::ostream &out, const std::vector<RankRow> &rows);
void write_mass_csv(std::ostream &out, const std::string &param,
                    const std::vector<MassRow> &rows);

} // namespace tpe::harness
