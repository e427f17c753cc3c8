#include "tpe/domain.hpp"

#include <cmath>
#include <string>

#include "tpe/errors.hpp"

namespace tpe {

int DiscreteDomain::index_of(double value) const {
  if (count == 1) return 0;
  return static_cast<int>(std::lround((value - low) / step));
}

ParamDomain ParamDomain::continuous(double low, double high, bool log_scale) {
  if (!(low < high)) {
    throw ConfigError("continuous domain requires low < high");
  }
  if (log_scale && !(low > 0.0)) {
    throw ConfigError("log-scale domain requires low > 0");
  }
  return ParamDomain(ContinuousDomain{low, high, log_scale});
}

ParamDomain ParamDomain::discrete_grid(double low, double step, int count) {
  if (!(step > 0.0)) throw ConfigError("discrete grid requires step > 0");
  if (count < 1) throw ConfigError("discrete grid requires count >= 1");
  return ParamDomain(DiscreteDomain{low, step, count});
}

ParamDomain ParamDomain::categorical(int n_choices, std::vector<std::string> labels) {
  if (n_choices < 1) throw ConfigError("categorical domain requires >= 1 choice");
  if (!labels.empty() && static_cast<int>(labels.size()) != n_choices) {
    throw ConfigError("categorical labels must match the number of choices");
  }
  return ParamDomain(CategoricalDomain{n_choices, std::move(labels)});
}

DomainKind ParamDomain::kind() const {
  if (std::holds_alternative<ContinuousDomain>(domain_)) return DomainKind::continuous;
  if (std::holds_alternative<DiscreteDomain>(domain_)) return DomainKind::discrete;
  return DomainKind::categorical;
}

const ContinuousDomain &ParamDomain::as_continuous() const {
  return std::get<ContinuousDomain>(domain_);
}

const DiscreteDomain &ParamDomain::as_discrete() const {
  return std::get<DiscreteDomain>(domain_);
}

const CategoricalDomain &ParamDomain::as_categorical() const {
  return std::get<CategoricalDomain>(domain_);
}

double ParamDomain::transformed_low() const {
  switch (kind()) {
  case DomainKind::continuous: {
    const auto &c = as_continuous();
    return c.log_scale ? std::log(c.low) : c.low;
  }
  case DomainKind::discrete:
    return as_discrete().low;
  case DomainKind::categorical:
    return 0.0;
  }
  return 0.0;
}

double ParamDomain::transformed_high() const {
  switch (kind()) {
  case DomainKind::continuous: {
    const auto &c = as_continuous();
    return c.log_scale ? std::log(c.high) : c.high;
  }
  case DomainKind::discrete:
    return as_discrete().high();
  case DomainKind::categorical:
    return static_cast<double>(as_categorical().n_choices - 1);
  }
  return 0.0;
}

double ParamDomain::transform(double raw) const {
  switch (kind()) {
  case DomainKind::continuous: {
    const auto &c = as_continuous();
    if (raw < c.low || raw > c.high) {
      throw DomainError("value " + std::to_string(raw) + " outside [" +
                        std::to_string(c.low) + ", " + std::to_string(c.high) + "]");
    }
    return c.log_scale ? std::log(raw) : raw;
  }
  case DomainKind::discrete: {
    const auto &g = as_discrete();
    const int idx = g.index_of(raw);
    if (idx < 0 || idx >= g.count ||
        std::abs(raw - g.value_at(idx)) > 1e-9 * std::max(1.0, std::abs(g.step))) {
      throw DomainError("value " + std::to_string(raw) + " is not on the grid");
    }
    return g.value_at(idx);
  }
  case DomainKind::categorical: {
    const auto &c = as_categorical();
    const int idx = static_cast<int>(raw);
    if (raw != static_cast<double>(idx) || idx < 0 || idx >= c.n_choices) {
      throw DomainError("invalid category index " + std::to_string(raw));
    }
    return raw;
  }
  }
  return raw;
}

double ParamDomain::untransform(double internal) const {
  switch (kind()) {
  case DomainKind::continuous: {
    const auto &c = as_continuous();
    return c.log_scale ? std::exp(internal) : internal;
  }
  case DomainKind::discrete:
  case DomainKind::categorical:
    return internal;
  }
  return internal;
}

bool ParamDomain::contains(double internal) const {
  switch (kind()) {
  case DomainKind::continuous:
    return internal >= transformed_low() && internal <= transformed_high();
  case DomainKind::discrete: {
    const auto &g = as_discrete();
    const int idx = g.index_of(internal);
    return idx >= 0 && idx < g.count &&
           std::abs(internal - g.value_at(idx)) <= 1e-9 * std::max(1.0, std::abs(g.step));
  }
  case DomainKind::categorical: {
    const int idx = static_cast<int>(internal);
    return internal == static_cast<double>(idx) && idx >= 0 &&
           idx < as_categorical().n_choices;
  }
  }
  return false;
}

} // namespace tpe
