#include "tpe/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tpe/errors.hpp"

namespace tpe::bench {

namespace {

// Frozen to full double precision so the minima land below the validation
// tolerance of the registry.
constexpr double styblinski_argmin = -2.903534027771177;
constexpr double styblinski_min_per_dim = -39.16616570377141;
constexpr double schwefel_argmax = 420.96874635998205;
constexpr double schwefel_offset = 418.9828872724337;

double sq(double v) { return v * v; }

double eval_ackley(std::span<const double> x) {
  const double d = static_cast<double>(x.size());
  double sum_sq = 0.0;
  double sum_cos = 0.0;
  for (double v : x) {
    sum_sq += sq(v);
    sum_cos += std::cos(2.0 * std::numbers::pi * v);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sum_sq / d)) - std::exp(sum_cos / d) +
         20.0 + std::numbers::e;
}

double eval_griewank(std::span<const double> x) {
  double sum = 0.0;
  double prod = 1.0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    sum += sq(x[d]) / 4000.0;
    prod *= std::cos(x[d] / std::sqrt(static_cast<double>(d + 1)));
  }
  return sum - prod + 1.0;
}

double eval_k_tablet(std::span<const double> x) {
  const std::size_t k = (x.size() + 3) / 4; // ceil(D / 4)
  double sum = 0.0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    sum += d < k ? sq(x[d]) : sq(100.0 * x[d]);
  }
  return sum;
}

double eval_levy(std::span<const double> x) {
  const auto w = [&](std::size_t d) { return 1.0 + (x[d] - 1.0) / 4.0; };
  const std::size_t n = x.size();
  double total = sq(std::sin(std::numbers::pi * w(0)));
  for (std::size_t d = 0; d + 1 < n; ++d) {
    total += sq(w(d) - 1.0) * (1.0 + 10.0 * sq(std::sin(std::numbers::pi * w(d) + 1.0)));
  }
  total += sq(w(n - 1) - 1.0) * (1.0 + sq(std::sin(2.0 * std::numbers::pi * w(n - 1))));
  return total;
}

// Perm(0, beta = 1): minimum 0 at x_j = 1/j.
double eval_perm(std::span<const double> x) {
  const std::size_t n = x.size();
  double total = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    double inner = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      const double ji = std::pow(static_cast<double>(j), static_cast<double>(i));
      inner += (static_cast<double>(j) + 1.0) *
               (std::pow(x[j - 1], static_cast<double>(i)) - 1.0 / ji);
    }
    total += sq(inner);
  }
  return total;
}

double eval_rastrigin(std::span<const double> x) {
  double total = 10.0 * static_cast<double>(x.size());
  for (double v : x) {
    total += sq(v) - 10.0 * std::cos(2.0 * std::numbers::pi * v);
  }
  return total;
}

double eval_rosenbrock(std::span<const double> x) {
  double total = 0.0;
  for (std::size_t d = 0; d + 1 < x.size(); ++d) {
    total += 100.0 * sq(x[d + 1] - sq(x[d])) + sq(x[d] - 1.0);
  }
  return total;
}

double eval_schwefel(std::span<const double> x) {
  double total = schwefel_offset * static_cast<double>(x.size());
  for (double v : x) {
    total -= v * std::sin(std::sqrt(std::abs(v)));
  }
  return total;
}

double eval_sphere(std::span<const double> x) {
  double total = 0.0;
  for (double v : x) total += sq(v);
  return total;
}

double eval_styblinski(std::span<const double> x) {
  double total = 0.0;
  for (double v : x) {
    total += 0.5 * (sq(sq(v)) - 16.0 * sq(v) + 5.0 * v);
  }
  return total;
}

double eval_weighted_sphere(std::span<const double> x) {
  double total = 0.0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    total += static_cast<double>(d + 1) * sq(x[d]);
  }
  return total;
}

// Xin-She-Yang N.2: (sum |x_d|) * exp(-sum sin(x_d^2)).
double eval_xin_she_yang(std::span<const double> x) {
  double sum_abs = 0.0;
  double sum_sin = 0.0;
  for (double v : x) {
    sum_abs += std::abs(v);
    sum_sin += std::sin(sq(v));
  }
  return sum_abs * std::exp(-sum_sin);
}

struct FunctionInfo {
  Function function;
  const char *name;
  double bound;
  double (*eval)(std::span<const double>);
};

constexpr FunctionInfo registry[] = {
    {Function::ackley, "ackley", 32.768, eval_ackley},
    {Function::griewank, "griewank", 600.0, eval_griewank},
    {Function::k_tablet, "k-tablet", 5.12, eval_k_tablet},
    {Function::levy, "levy", 10.0, eval_levy},
    {Function::perm, "perm", 1.0, eval_perm},
    {Function::rastrigin, "rastrigin", 5.12, eval_rastrigin},
    {Function::rosenbrock, "rosenbrock", 5.0, eval_rosenbrock},
    {Function::schwefel, "schwefel", 500.0, eval_schwefel},
    {Function::sphere, "sphere", 5.0, eval_sphere},
    {Function::styblinski, "styblinski", 5.0, eval_styblinski},
    {Function::weighted_sphere, "weighted-sphere", 5.0, eval_weighted_sphere},
    {Function::xin_she_yang, "xin-she-yang", 2.0 * std::numbers::pi, eval_xin_she_yang},
};

const FunctionInfo &info(Function f) {
  for (const auto &entry : registry) {
    if (entry.function == f) return entry;
  }
  throw ConfigError("unknown benchmark function");
}

} // namespace

const std::vector<Function> &all_functions() {
  static const std::vector<Function> fns = [] {
    std::vector<Function> out;
    for (const auto &entry : registry) out.push_back(entry.function);
    return out;
  }();
  return fns;
}

std::string function_name(Function f) { return info(f).name; }

Function function_from_name(const std::string &name) {
  for (const auto &entry : registry) {
    if (name == entry.name) return entry.function;
  }
  throw ConfigError("unknown benchmark function '" + name + "'");
}

double domain_bound(Function f) { return info(f).bound; }

std::string BenchmarkSpec::name() const {
  return function_name(function) + "-" + std::to_string(dimension) + "d";
}

BenchmarkSpec parse_benchmark(const std::string &key) {
  const auto dash = key.rfind('-');
  if (dash == std::string::npos || dash + 2 > key.size() || key.back() != 'd') {
    throw ConfigError("benchmark key must look like '<function>-<D>d': " + key);
  }
  const std::string fn_name = key.substr(0, dash);
  const std::string dim_part = key.substr(dash + 1, key.size() - dash - 2);
  int dimension = 0;
  try {
    dimension = std::stoi(dim_part);
  } catch (const std::exception &) {
    throw ConfigError("bad dimension in benchmark key: " + key);
  }
  if (dimension < 1) throw ConfigError("benchmark dimension must be >= 1");
  return BenchmarkSpec{function_from_name(fn_name), dimension, 0.0};
}

double evaluate(const BenchmarkSpec &spec, std::span<const double> x,
                RandomStream *noise) {
  double value = evaluate_noiseless(spec, x);
  if (spec.noise_std > 0.0) {
    if (noise == nullptr) {
      throw ConfigError("noisy evaluation needs a random stream");
    }
    value += spec.noise_std * noise->normal();
  }
  return value;
}

double evaluate_noiseless(const BenchmarkSpec &spec, std::span<const double> x) {
  if (static_cast<int>(x.size()) != spec.dimension) {
    throw DomainError("point dimension mismatch for " + spec.name());
  }
  const double bound = spec.bound();
  for (double v : x) {
    if (std::abs(v) > bound) {
      throw DomainError("point outside |x| <= " + std::to_string(bound));
    }
  }
  return info(spec.function).eval(x);
}

SearchSpace make_space(const BenchmarkSpec &spec) {
  std::vector<Dimension> dims;
  dims.reserve(spec.dimension);
  const double bound = spec.bound();
  for (int d = 0; d < spec.dimension; ++d) {
    dims.push_back(Dimension{"x" + std::to_string(d),
                             ParamDomain::continuous(-bound, bound), std::nullopt});
  }
  return SearchSpace(std::move(dims));
}

std::vector<double> to_point(const BenchmarkSpec &spec, const Configuration &config) {
  std::vector<double> point(spec.dimension);
  for (int d = 0; d < spec.dimension; ++d) point[d] = config.at(d);
  return point;
}

std::vector<double> known_minimizer(Function f, int dimension) {
  std::vector<double> x(dimension, 0.0);
  switch (f) {
  case Function::rosenbrock:
  case Function::levy:
    std::fill(x.begin(), x.end(), 1.0);
    break;
  case Function::schwefel:
    std::fill(x.begin(), x.end(), schwefel_argmax);
    break;
  case Function::styblinski:
    std::fill(x.begin(), x.end(), styblinski_argmin);
    break;
  case Function::perm:
    for (int d = 0; d < dimension; ++d) x[d] = 1.0 / (d + 1);
    break;
  default:
    break; // minimum at the origin
  }
  return x;
}

double known_minimum(Function f, int dimension) {
  if (f == Function::styblinski) return styblinski_min_per_dim * dimension;
  return 0.0;
}

StudyResult random_search(const BenchmarkSpec &spec, int n_trials,
                          std::uint64_t seed) {
  if (n_trials < 1) throw ConfigError("n_trials must be >= 1");
  const SearchSpace space = make_space(spec);
  RandomStream rng(seed);
  RandomStream noise(derive_seed(seed, 0x6e6f697365)); // independent noise stream

  StudyResult result;
  result.config_name = "random-search";
  result.benchmark = spec.name();
  result.seed = seed;
  result.trials.reserve(n_trials);
  result.cumulative_min.reserve(n_trials);
  double best = std::numeric_limits<double>::infinity();
  for (int t = 1; t <= n_trials; ++t) {
    Configuration config = space.random_sample(rng);
    const auto point = to_point(spec, config);
    const double noiseless = evaluate_noiseless(spec, point);
    const double value =
        spec.noise_std > 0.0 ? noiseless + spec.noise_std * noise.normal() : noiseless;
    best = std::min(best, value);
    TrialRecord record{t, std::move(config), value, std::nullopt, 0.0};
    if (spec.noise_std > 0.0) record.noiseless = noiseless;
    result.trials.push_back(std::move(record));
    result.cumulative_min.push_back(best);
  }
  return result;
}

} // namespace tpe::bench
