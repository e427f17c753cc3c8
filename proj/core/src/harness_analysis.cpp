#include "tpe/harness/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <set>

#include "tpe/bandwidth.hpp"
#include "tpe/errors.hpp"
#include "tpe/math.hpp"

namespace tpe::harness {

namespace {

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

bool parse_double(const std::string &text, double &out) {
  const char *begin = text.data();
  const char *end = begin + text.size();
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end && std::isfinite(out);
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double value_at_step(const RunSummary &run, int step) {
  if (step < 1 || step > static_cast<int>(run.cumulative_min.size())) {
    throw DataError("run (" + run.config + ", " + run.benchmark + ", seed " +
                    std::to_string(run.seed) + ") has no step " + std::to_string(step));
  }
  return run.cumulative_min[step - 1];
}

// method x benchmark -> median over seeds at a step, on a validated grid.
std::map<std::pair<std::string, std::string>, double>
median_table(const std::vector<RunSummary> &results, int step) {
  std::set<std::string> methods;
  std::set<std::string> benchmarks;
  std::set<std::uint64_t> seeds;
  for (const auto &r : results) {
    methods.insert(r.config);
    benchmarks.insert(r.benchmark);
    seeds.insert(r.seed);
  }
  std::map<std::pair<std::string, std::string>, std::map<std::uint64_t, double>> cells;
  for (const auto &r : results) {
    auto &cell = cells[{r.config, r.benchmark}];
    if (!cell.emplace(r.seed, value_at_step(r, step)).second) {
      throw DataError("duplicate run (" + r.config + ", " + r.benchmark + ", seed " +
                      std::to_string(r.seed) + ")");
    }
  }
  std::map<std::pair<std::string, std::string>, double> out;
  for (const auto &method : methods) {
    for (const auto &benchmark : benchmarks) {
      const auto it = cells.find({method, benchmark});
      if (it == cells.end() || it->second.size() != seeds.size()) {
        throw DataError("missing results for (" + method + ", " + benchmark + ")");
      }
      std::vector<double> values;
      values.reserve(it->second.size());
      for (const auto &[seed, v] : it->second) values.push_back(v);
      out[{method, benchmark}] = median(values);
    }
  }
  return out;
}

// Fractional ranking, 1 = smallest, ties share the average position.
std::map<std::string, double> rank_methods(const std::vector<std::pair<double, std::string>> &scored) {
  auto sorted = scored;
  std::sort(sorted.begin(), sorted.end());
  std::map<std::string, double> ranks;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1].first == sorted[i].first) ++j;
    const double rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (std::size_t k = i; k <= j; ++k) ranks[sorted[k].second] = rank;
    i = j + 1;
  }
  return ranks;
}

} // namespace

std::vector<RankRow> average_rank(const std::vector<RunSummary> &results,
                                  const std::vector<int> &at_steps) {
  if (results.empty()) throw DataError("no results to rank");
  std::set<std::string> methods;
  std::set<std::string> benchmarks;
  for (const auto &r : results) {
    methods.insert(r.config);
    benchmarks.insert(r.benchmark);
  }
  if (methods.size() < 2) throw DataError("average_rank needs at least two methods");

  std::vector<RankRow> rows;
  for (int step : at_steps) {
    const auto medians = median_table(results, step);
    std::map<std::string, double> total;
    for (const auto &benchmark : benchmarks) {
      std::vector<std::pair<double, std::string>> scored;
      for (const auto &method : methods) {
        scored.emplace_back(medians.at({method, benchmark}), method);
      }
      for (const auto &[method, rank] : rank_methods(scored)) total[method] += rank;
    }
    for (const auto &method : methods) {
      rows.push_back(RankRow{step, method, total[method] / benchmarks.size()});
    }
  }
  return rows;
}

std::vector<MassRow> top_quantile_mass(const std::vector<RunSummary> &results,
                                       double alpha, int at_step,
                                       const std::string &control_param) {
  if (results.empty()) throw DataError("no results to analyze");
  if (!(alpha > 0.0) || alpha > 1.0) throw ConfigError("alpha must lie in (0, 1]");

  std::set<std::string> benchmarks;
  std::set<std::string> config_names;
  std::map<std::string, std::string> param_of_config;
  for (const auto &r : results) {
    benchmarks.insert(r.benchmark);
    config_names.insert(r.config);
    const auto it = r.config_params.find(control_param);
    if (it == r.config_params.end()) {
      throw DataError("config '" + r.config + "' does not carry parameter '" +
                      control_param + "'");
    }
    param_of_config[r.config] = it->second;
  }
  // The averaging over tasks assumes one common config grid.
  {
    std::map<std::string, std::set<std::string>> per_task;
    for (const auto &r : results) per_task[r.benchmark].insert(r.config);
    for (const auto &[task, names] : per_task) {
      if (names != config_names) {
        throw DataError("benchmark '" + task + "' does not cover the full config grid");
      }
    }
  }

  const auto medians = median_table(results, at_step);
  const int k_total = static_cast<int>(config_names.size());
  const int n_survivors = static_cast<int>(std::ceil(alpha * k_total - 1e-9));

  // The support of the output: every value the grid contains.
  std::vector<std::string> choices;
  for (const auto &[config, value] : param_of_config) {
    if (std::find(choices.begin(), choices.end(), value) == choices.end()) {
      choices.push_back(value);
    }
  }
  std::vector<double> numeric_choices(choices.size());
  bool numeric = true;
  for (std::size_t i = 0; i < choices.size() && numeric; ++i) {
    numeric = parse_double(choices[i], numeric_choices[i]);
  }
  if (numeric) {
    std::vector<std::size_t> order(choices.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return numeric_choices[a] < numeric_choices[b]; });
    std::vector<std::string> sorted_choices;
    std::vector<double> sorted_numeric;
    for (std::size_t i : order) {
      sorted_choices.push_back(choices[i]);
      sorted_numeric.push_back(numeric_choices[i]);
    }
    choices = std::move(sorted_choices);
    numeric_choices = std::move(sorted_numeric);
  } else {
    std::sort(choices.begin(), choices.end());
  }

  std::vector<double> mean_mass(choices.size(), 0.0);
  for (const auto &benchmark : benchmarks) {
    std::vector<std::pair<double, std::string>> scored;
    for (const auto &config : config_names) {
      scored.emplace_back(medians.at({config, benchmark}), config);
    }
    std::sort(scored.begin(), scored.end());
    scored.resize(n_survivors);

    std::vector<double> mass(choices.size(), 0.0);
    bool counted = true;
    if (numeric) {
      std::vector<double> survivor_values;
      for (const auto &[score, config] : scored) {
        double v = 0.0;
        parse_double(param_of_config.at(config), v);
        survivor_values.push_back(v);
      }
      const double b = bw_scott(survivor_values);
      if (b > 0.0) {
        counted = false;
        for (std::size_t c = 0; c < choices.size(); ++c) {
          for (double v : survivor_values) {
            mass[c] += math::norm_pdf((numeric_choices[c] - v) / b) / b;
          }
        }
      }
    }
    if (counted) {
      for (const auto &[score, config] : scored) {
        const auto &value = param_of_config.at(config);
        for (std::size_t c = 0; c < choices.size(); ++c) {
          if (choices[c] == value) mass[c] += 1.0;
        }
      }
    }
    double total = 0.0;
    for (double m : mass) total += m;
    if (!(total > 0.0)) {
      throw DataError("top-quantile survivors carry no mass on '" + control_param + "'");
    }
    for (std::size_t c = 0; c < choices.size(); ++c) {
      mean_mass[c] += mass[c] / total / benchmarks.size();
    }
  }

  double total = 0.0;
  for (double m : mean_mass) total += m;
  std::vector<MassRow> rows;
  for (std::size_t c = 0; c < choices.size(); ++c) {
    rows.push_back(MassRow{choices[c], mean_mass[c] / total});
  }
  return rows;
}

void write_rank_csv(std::ostream &out, const std::vector<RankRow> &rows) {
  out << "step,method,average_rank\n";
  for (const auto &row : rows) {
    out << row.step << ',' << row.method << ',' << format_double(row.average_rank)
        << '\n';
  }
}

void write_mass_csv(std::ostream &out, const std::string &param,
                    const std::vector<MassRow> &rows) {
  out << "param,value,mass\n";
  for (const auto &row : rows) {
    out << param << ',' << row.value << ',' << format_double(row.mass) << '\n';
  }
}

} // namespace tpe::harness
