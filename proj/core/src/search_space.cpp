#include "tpe/search_space.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "tpe/errors.hpp"

namespace tpe {

SearchSpace::SearchSpace(std::vector<Dimension> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw ConfigError("search space needs at least one dimension");

  std::set<std::string> names;
  for (const auto &d : dims_) {
    if (!names.insert(d.name).second) {
      throw ConfigError("duplicate dimension name '" + d.name + "'");
    }
  }

  const int n = size();
  for (int i = 0; i < n; ++i) {
    const auto &cond = dims_[i].condition;
    if (!cond) {
      unconditional_.push_back(i);
      continue;
    }
    if (cond->parent < 0 || cond->parent >= n) {
      throw ConfigError("condition on '" + dims_[i].name + "' references an unknown dimension");
    }
    if (cond->parent == i) {
      throw ConfigError("condition on '" + dims_[i].name + "' references itself");
    }
    const auto &parent = dims_[cond->parent];
    if (parent.domain.kind() == DomainKind::categorical) {
      if (cond->op != Condition::Op::eq) {
        throw ConfigError("categorical parent '" + parent.name + "' only supports ==");
      }
      const int idx = static_cast<int>(cond->value);
      if (cond->value != static_cast<double>(idx) || idx < 0 ||
          idx >= parent.domain.as_categorical().n_choices) {
        throw ConfigError("condition on '" + dims_[i].name + "' uses an invalid category");
      }
    }
  }

  // Topological order over the parent edges; a cycle is a construction error.
  std::vector<int> state(n, 0); // 0 unvisited, 1 in progress, 2 done
  std::vector<int> stack;
  for (int root = 0; root < n; ++root) {
    if (state[root] != 0) continue;
    stack.push_back(root);
    while (!stack.empty()) {
      const int v = stack.back();
      if (state[v] == 0) {
        state[v] = 1;
        if (dims_[v].condition) {
          const int p = dims_[v].condition->parent;
          if (state[p] == 1) throw ConfigError("conditions form a cycle");
          if (state[p] == 0) {
            stack.push_back(p);
            continue;
          }
        }
      }
      if (state[v] != 2) {
        state[v] = 2;
        topo_order_.push_back(v);
      }
      stack.pop_back();
    }
  }
  for (int i : topo_order_) {
    if (dims_[i].condition) topo_only_conditional_.push_back(i);
  }
}

int SearchSpace::index_of(const std::string &name) const {
  for (int i = 0; i < size(); ++i) {
    if (dims_[i].name == name) return i;
  }
  throw ConfigError("unknown dimension '" + name + "'");
}

bool SearchSpace::condition_active(int dim, const Configuration &config) const {
  const auto &cond = dims_[dim].condition;
  if (!cond) return true;
  if (config.is_null(cond->parent)) return false;
  const auto &parent = dims_[cond->parent];
  const double raw = parent.domain.untransform(config.at(cond->parent));
  switch (cond->op) {
  case Condition::Op::eq:
    return raw == cond->value;
  case Condition::Op::ge:
    return raw >= cond->value;
  }
  return false;
}

double SearchSpace::random_dim_value(int dim, RandomStream &rng) const {
  const auto &domain = dims_[dim].domain;
  switch (domain.kind()) {
  case DomainKind::continuous:
    return rng.uniform(domain.transformed_low(), domain.transformed_high());
  case DomainKind::discrete: {
    const auto &g = domain.as_discrete();
    return g.value_at(rng.uniform_int(g.count));
  }
  case DomainKind::categorical:
    return static_cast<double>(rng.uniform_int(domain.as_categorical().n_choices));
  }
  return 0.0;
}

Configuration SearchSpace::random_sample(RandomStream &rng) const {
  Configuration config(dims_.size());
  for (int d : topo_order_) {
    if (!condition_active(d, config)) continue;
    config.values[d] = random_dim_value(d, rng);
  }
  return config;
}

void SearchSpace::validate(const Configuration &config) const {
  if (config.values.size() != dims_.size()) {
    throw DataError("configuration has wrong dimensionality");
  }
  for (int d : topo_order_) {
    const bool active = condition_active(d, config);
    if (active != !config.is_null(d)) {
      throw DataError("dimension '" + dims_[d].name + "' must be " +
                      (active ? "set" : "null"));
    }
    if (active && !dims_[d].domain.contains(config.at(d))) {
      throw DataError("value of dimension '" + dims_[d].name + "' is out of domain");
    }
  }
}

std::vector<SubspaceGroup> enumerate_subspaces(const SearchSpace &space,
                                               const Dataset &data) {
  std::map<std::vector<bool>, SubspaceGroup> groups;
  const int n_dims = space.size();
  for (std::size_t i = 0; i < data.size(); ++i) {
    space.validate(data[i].config); // malformed null pattern -> DataError
    std::vector<bool> active(n_dims, false);
    for (int d = 0; d < n_dims; ++d) active[d] = !data[i].config.is_null(d);
    auto it = groups.find(active);
    if (it == groups.end()) {
      SubspaceGroup group;
      for (int d = 0; d < n_dims; ++d) {
        if (active[d]) group.dims.push_back(d);
      }
      it = groups.emplace(std::move(active), std::move(group)).first;
    }
    it->second.observation_indices.push_back(static_cast<int>(i));
  }

  std::vector<SubspaceGroup> out;
  out.reserve(groups.size());
  for (auto &[mask, group] : groups) out.push_back(std::move(group));
  return out;
}

} // namespace tpe
