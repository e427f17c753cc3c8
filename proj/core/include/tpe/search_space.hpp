#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tpe/domain.hpp"
#include "tpe/random.hpp"

namespace tpe {

// Activation predicate of a conditional dimension: a single comparison
// against one parent dimension. The predicate is false whenever the parent
// itself is inactive, which is what makes chained conditions tree-structured.
struct Condition {
  enum class Op { eq, ge };
  int parent;
  Op op;
  double value; // raw value; category index for categorical parents
};

struct Dimension {
  std::string name;
  ParamDomain domain;
  std::optional<Condition> condition;
};

// A point of the search space in internal representation. Inactive
// conditional dimensions hold the explicit null marker (nullopt), never NaN.
struct Configuration {
  std::vector<std::optional<double>> values;

  Configuration() = default;
  explicit Configuration(std::size_t n_dims) : values(n_dims) {}

  bool is_null(int dim) const { return !values[dim].has_value(); }
  double at(int dim) const { return values[dim].value(); }

  bool operator==(const Configuration &other) const = default;
};

// Immutable, validated search space. Shareable across threads; all sampling
// draws from a caller-provided stream.
class SearchSpace {
public:
  explicit SearchSpace(std::vector<Dimension> dims);

  int size() const { return static_cast<int>(dims_.size()); }
  const Dimension &dim(int index) const { return dims_[index]; }
  int index_of(const std::string &name) const;
  bool has_conditions() const { return !topo_only_conditional_.empty(); }

  // Dimension indices ordered so parents precede their dependents.
  const std::vector<int> &sampling_order() const { return topo_order_; }

  // Dimensions without a condition (active in every configuration).
  const std::vector<int> &unconditional_dims() const { return unconditional_; }

  // True when `dim`'s predicate holds on the values assigned so far.
  bool condition_active(int dim, const Configuration &config) const;

  // Uniform sample over the transformed domain of every active dimension.
  Configuration random_sample(RandomStream &rng) const;

  // Uniform sample of a single dimension.
  double random_dim_value(int dim, RandomStream &rng) const;

  // Checks domain membership and that a dim is null exactly when its
  // condition evaluates false. Throws DataError otherwise.
  void validate(const Configuration &config) const;

private:
  std::vector<Dimension> dims_;
  std::vector<int> topo_order_;
  std::vector<int> unconditional_;
  std::vector<int> topo_only_conditional_;
};

struct Observation {
  Configuration config;
  double value;
  int query_order; // 1-based position in the trial sequence
};

using Dataset = std::vector<Observation>;

// One group of the tree-structured ("group" mode) decomposition: the set of
// dimensions that are jointly active, plus the observations whose active set
// is exactly that one.
struct SubspaceGroup {
  std::vector<int> dims;                // sorted ascending
  std::vector<int> observation_indices; // indices into the input dataset
};

// Partitions `data` by the exact set of non-null dimensions. Every
// observation lands in exactly one group; groups are ordered by their
// dimension sets. O(D*N). Throws DataError when an observation's null
// pattern contradicts the space's conditions.
std::vector<SubspaceGroup> enumerate_subspaces(const SearchSpace &space,
                                               const Dataset &data);

} // namespace tpe
