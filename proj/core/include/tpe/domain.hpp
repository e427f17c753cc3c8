#pragma once

#include <string>
#include <variant>
#include <vector>

namespace tpe {

enum class DomainKind { continuous, discrete, categorical };

struct ContinuousDomain {
  double low;
  double high;
  bool log_scale = false;
};

// Grid {low, low + step, ..., low + (count - 1) * step}.
struct DiscreteDomain {
  double low;
  double step;
  int count;

  double high() const { return low + (count - 1) * step; }
  double value_at(int index) const { return low + index * step; }
  int index_of(double value) const;
};

struct CategoricalDomain {
  int n_choices;
  std::vector<std::string> labels; // optional; size n_choices when present
};

// Typed parameter domain. Values are handled in an internal representation:
// continuous dims store the transformed coordinate (log applied when
// log_scale), discrete dims store the raw grid value, categorical dims store
// the choice index.
class ParamDomain {
public:
  static ParamDomain continuous(double low, double high, bool log_scale = false);
  static ParamDomain discrete_grid(double low, double step, int count);
  static ParamDomain categorical(int n_choices, std::vector<std::string> labels = {});

  DomainKind kind() const;
  bool is_numerical() const { return kind() != DomainKind::categorical; }

  const ContinuousDomain &as_continuous() const;
  const DiscreteDomain &as_discrete() const;
  const CategoricalDomain &as_categorical() const;

  // Bounds of the axis kernels and bandwidths operate on.
  double transformed_low() const;
  double transformed_high() const;

  double transform(double raw) const;
  double untransform(double internal) const;

  // Whether an internal-representation value lies in the domain.
  bool contains(double internal) const;

private:
  template <typename T> explicit ParamDomain(T d) : domain_(std::move(d)) {}
  std::variant<ContinuousDomain, DiscreteDomain, CategoricalDomain> domain_;
};

} // namespace tpe
