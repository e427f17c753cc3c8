#pragma once

#include <span>

namespace tpe::math {

inline constexpr double log_sqrt_2pi = 0.91893853320467274178;

// Standard normal density / log-density.
double norm_pdf(double z);
double norm_log_pdf(double z);

// Standard normal CDF via the complementary error function.
double norm_cdf(double z);

// Inverse standard normal CDF. Rational initial guess refined with one
// Halley step against norm_cdf; absolute error is at the few-ulp level.
double norm_ppf(double p);

// log(exp(a) + exp(b)) without overflow; -inf inputs are handled.
double log_add_exp(double a, double b);

// logsumexp over a set of log-terms; -inf entries are skipped.
double log_sum_exp(std::span<const double> log_terms);

} // namespace tpe::math
