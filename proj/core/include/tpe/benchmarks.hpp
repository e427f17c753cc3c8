#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tpe/random.hpp"
#include "tpe/search_space.hpp"
#include "tpe/study_result.hpp"

namespace tpe::bench {

enum class Function {
  ackley,
  griewank,
  k_tablet,
  levy,
  perm,
  rastrigin,
  rosenbrock,
  schwefel,
  sphere,
  styblinski,
  weighted_sphere,
  xin_she_yang,
};

const std::vector<Function> &all_functions();
std::string function_name(Function f);
Function function_from_name(const std::string &name);

// Half-width R of the box |x_d| <= R each function is defined on.
double domain_bound(Function f);

struct BenchmarkSpec {
  Function function;
  int dimension;
  double noise_std = 0.0;

  double bound() const { return domain_bound(function); }
  // Registry key, e.g. "styblinski-5d".
  std::string name() const;
};

// Parses a registry key of the form "<function>-<D>d".
BenchmarkSpec parse_benchmark(const std::string &key);

// Deterministic function value plus N(0, noise_std^2) observation noise when
// noise_std > 0 (the stream is required in that case). Out-of-bounds input
// raises DomainError.
double evaluate(const BenchmarkSpec &spec, std::span<const double> x,
                RandomStream *noise = nullptr);

double evaluate_noiseless(const BenchmarkSpec &spec, std::span<const double> x);

// D continuous linear dimensions x0..x{D-1} on [-R, R].
SearchSpace make_space(const BenchmarkSpec &spec);

// Raw coordinate vector of a configuration of make_space(spec).
std::vector<double> to_point(const BenchmarkSpec &spec, const Configuration &config);

std::vector<double> known_minimizer(Function f, int dimension);
double known_minimum(Function f, int dimension);

// Uniform-sampling baseline with the same result schema as TPE runs.
StudyResult random_search(const BenchmarkSpec &spec, int n_trials,
                          std::uint64_t seed);

} // namespace tpe::bench
