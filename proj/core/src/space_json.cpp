#include "tpe/space_json.hpp"

#include <cmath>
#include <optional>

#include <nlohmann/json.hpp>

#include "tpe/errors.hpp"

namespace tpe {

namespace {

using nlohmann::json;

struct ParsedCondition {
  std::string parent_name;
  Condition::Op op;
  json value; // number or category label
};

// "<dim> == <value>" or "<dim> >= <value>".
ParsedCondition parse_condition_text(const std::string &text) {
  for (const auto &[token, op] :
       {std::pair<std::string, Condition::Op>{"==", Condition::Op::eq},
        std::pair<std::string, Condition::Op>{">=", Condition::Op::ge}}) {
    const auto pos = text.find(token);
    if (pos == std::string::npos) continue;
    const auto trim = [](std::string s) {
      const auto begin = s.find_first_not_of(" \t");
      const auto end = s.find_last_not_of(" \t");
      if (begin == std::string::npos) return std::string();
      return s.substr(begin, end - begin + 1);
    };
    const std::string lhs = trim(text.substr(0, pos));
    const std::string rhs = trim(text.substr(pos + token.size()));
    if (lhs.empty() || rhs.empty()) {
      throw ConfigError("malformed condition '" + text + "'");
    }
    json value;
    try {
      value = json::parse(rhs);
    } catch (const json::parse_error &) {
      value = rhs; // bare category label
    }
    if (!value.is_number() && !value.is_string()) {
      throw ConfigError("condition value must be a number or label: '" + text + "'");
    }
    return ParsedCondition{lhs, op, value};
  }
  throw ConfigError("condition '" + text + "' must use == or >=");
}

ParamDomain domain_from_json(const json &j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "continuous") {
    return ParamDomain::continuous(j.at("low").get<double>(),
                                   j.at("high").get<double>(),
                                   j.value("log", false));
  }
  if (type == "discrete") {
    const double low = j.at("low").get<double>();
    const double high = j.at("high").get<double>();
    const double step = j.at("step").get<double>();
    if (!(step > 0.0)) throw ConfigError("discrete step must be > 0");
    const double ratio = (high - low) / step;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, std::abs(ratio))) {
      throw ConfigError("discrete range is not a whole number of steps");
    }
    return ParamDomain::discrete_grid(low, step, static_cast<int>(rounded) + 1);
  }
  if (type == "categorical") {
    const auto &choices = j.at("choices");
    if (choices.is_number_integer()) {
      return ParamDomain::categorical(choices.get<int>());
    }
    if (!choices.is_array() || choices.empty()) {
      throw ConfigError("categorical choices must be a nonempty array or a count");
    }
    std::vector<std::string> labels;
    for (const auto &c : choices) {
      labels.push_back(c.is_string() ? c.get<std::string>() : c.dump());
    }
    return ParamDomain::categorical(static_cast<int>(labels.size()), std::move(labels));
  }
  throw ConfigError("unknown dimension type '" + type + "'");
}

double condition_value(const ParsedCondition &parsed, const Dimension &parent) {
  if (parent.domain.kind() == DomainKind::categorical) {
    const auto &cat = parent.domain.as_categorical();
    if (parsed.value.is_string()) {
      const std::string label = parsed.value.get<std::string>();
      for (int i = 0; i < cat.n_choices; ++i) {
        if (!cat.labels.empty() && cat.labels[i] == label) return i;
      }
      throw ConfigError("unknown category '" + label + "' of '" + parent.name + "'");
    }
    return parsed.value.get<double>();
  }
  if (!parsed.value.is_number()) {
    throw ConfigError("condition on numerical '" + parent.name + "' needs a number");
  }
  return parsed.value.get<double>();
}

} // namespace

SearchSpace space_from_json(const std::string &json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw ConfigError(std::string("invalid search-space JSON: ") + e.what());
  }
  if (!doc.is_array() || doc.empty()) {
    throw ConfigError("search-space JSON must be a nonempty array");
  }

  std::vector<Dimension> dims;
  std::vector<std::optional<ParsedCondition>> conditions;
  for (const auto &entry : doc) {
    Dimension dim{entry.at("name").get<std::string>(), domain_from_json(entry),
                  std::nullopt};
    dims.push_back(std::move(dim));
    if (entry.contains("condition")) {
      conditions.push_back(parse_condition_text(entry.at("condition").get<std::string>()));
    } else {
      conditions.push_back(std::nullopt);
    }
  }

  const auto index_of = [&](const std::string &name) {
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (dims[i].name == name) return static_cast<int>(i);
    }
    throw ConfigError("condition references unknown dimension '" + name + "'");
  };
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (!conditions[i]) continue;
    const int parent = index_of(conditions[i]->parent_name);
    dims[i].condition = Condition{parent, conditions[i]->op,
                                  condition_value(*conditions[i], dims[parent])};
  }
  return SearchSpace(std::move(dims));
}

std::string space_to_json(const SearchSpace &space) {
  json doc = json::array();
  for (int d = 0; d < space.size(); ++d) {
    const Dimension &dim = space.dim(d);
    json entry;
    entry["name"] = dim.name;
    switch (dim.domain.kind()) {
    case DomainKind::continuous: {
      const auto &c = dim.domain.as_continuous();
      entry["type"] = "continuous";
      entry["low"] = c.low;
      entry["high"] = c.high;
      if (c.log_scale) entry["log"] = true;
      break;
    }
    case DomainKind::discrete: {
      const auto &g = dim.domain.as_discrete();
      entry["type"] = "discrete";
      entry["low"] = g.low;
      entry["high"] = g.high();
      entry["step"] = g.step;
      break;
    }
    case DomainKind::categorical: {
      const auto &c = dim.domain.as_categorical();
      entry["type"] = "categorical";
      if (c.labels.empty()) {
        entry["choices"] = c.n_choices;
      } else {
        entry["choices"] = c.labels;
      }
      break;
    }
    }
    if (dim.condition) {
      const Dimension &parent = space.dim(dim.condition->parent);
      std::string value;
      if (parent.domain.kind() == DomainKind::categorical &&
          !parent.domain.as_categorical().labels.empty()) {
        value = parent.domain.as_categorical().labels[static_cast<int>(dim.condition->value)];
      } else {
        value = json(dim.condition->value).dump();
      }
      entry["condition"] = parent.name +
                           (dim.condition->op == Condition::Op::eq ? " == " : " >= ") +
                           value;
    }
    doc.push_back(std::move(entry));
  }
  return doc.dump();
}

} // namespace tpe
