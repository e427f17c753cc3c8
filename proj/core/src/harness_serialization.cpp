#include "tpe/harness/serialization.hpp"

#include <istream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tpe/errors.hpp"

namespace tpe::harness {

namespace {

using nlohmann::json;

json param_to_json(const ParamDomain &domain, double internal) {
  if (domain.kind() == DomainKind::categorical) {
    const auto &cat = domain.as_categorical();
    const int idx = static_cast<int>(internal);
    if (!cat.labels.empty()) return cat.labels[idx];
    return idx;
  }
  return domain.untransform(internal);
}

double param_from_json(const ParamDomain &domain, const json &value) {
  if (domain.kind() == DomainKind::categorical) {
    const auto &cat = domain.as_categorical();
    if (value.is_string()) {
      const std::string label = value.get<std::string>();
      for (int i = 0; i < cat.n_choices; ++i) {
        if (!cat.labels.empty() && cat.labels[i] == label) return i;
      }
      throw DataError("unknown category label '" + label + "'");
    }
    return static_cast<double>(value.get<int>());
  }
  return domain.transform(value.get<double>());
}

json parse_line(const std::string &line) {
  try {
    return json::parse(line);
  } catch (const json::parse_error &e) {
    throw DataError(std::string("invalid result JSONL: ") + e.what());
  }
}

} // namespace

std::string result_to_json_line(const StudyResult &result, const SearchSpace &space,
                                const std::map<std::string, std::string> &config_params) {
  json record;
  record["config"] = result.config_name;
  record["benchmark"] = result.benchmark;
  record["seed"] = result.seed;
  record["config_params"] = config_params;
  record["cummin"] = result.cumulative_min;

  json trials = json::array();
  for (const auto &trial : result.trials) {
    json params;
    for (int d = 0; d < space.size(); ++d) {
      const auto &name = space.dim(d).name;
      if (trial.params.is_null(d)) {
        params[name] = nullptr;
      } else {
        params[name] = param_to_json(space.dim(d).domain, trial.params.at(d));
      }
    }
    json t;
    t["order"] = trial.order;
    t["params"] = std::move(params);
    t["value"] = trial.value;
    if (trial.noiseless) t["noiseless"] = *trial.noiseless;
    t["elapsed"] = trial.elapsed_seconds;
    trials.push_back(std::move(t));
  }
  record["trials"] = std::move(trials);
  return record.dump();
}

StudyResult result_from_json_line(const std::string &line, const SearchSpace &space) {
  const json record = parse_line(line);
  StudyResult result;
  result.config_name = record.at("config").get<std::string>();
  result.benchmark = record.at("benchmark").get<std::string>();
  result.seed = record.at("seed").get<std::uint64_t>();
  result.cumulative_min = record.at("cummin").get<std::vector<double>>();
  for (const auto &t : record.at("trials")) {
    TrialRecord trial;
    trial.order = t.at("order").get<int>();
    trial.value = t.at("value").get<double>();
    trial.elapsed_seconds = t.at("elapsed").get<double>();
    if (t.contains("noiseless")) trial.noiseless = t.at("noiseless").get<double>();
    trial.params = Configuration(space.size());
    const auto &params = t.at("params");
    for (int d = 0; d < space.size(); ++d) {
      const auto &value = params.at(space.dim(d).name);
      if (value.is_null()) continue;
      trial.params.values[d] = param_from_json(space.dim(d).domain, value);
    }
    result.trials.push_back(std::move(trial));
  }
  return result;
}

std::vector<RunSummary> read_summaries_jsonl(std::istream &in) {
  std::vector<RunSummary> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json record = parse_line(line);
    RunSummary summary;
    summary.config = record.at("config").get<std::string>();
    summary.benchmark = record.at("benchmark").get<std::string>();
    summary.seed = record.at("seed").get<std::uint64_t>();
    if (record.contains("config_params")) {
      summary.config_params =
          record.at("config_params").get<std::map<std::string, std::string>>();
    }
    summary.cumulative_min = record.at("cummin").get<std::vector<double>>();
    out.push_back(std::move(summary));
  }
  return out;
}

std::string strip_timing_jsonl(std::istream &in) {
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json record = parse_line(line);
    if (record.contains("trials")) {
      for (auto &t : record.at("trials")) t["elapsed"] = 0.0;
    }
    out << record.dump() << '\n';
  }
  return out.str();
}

} // namespace tpe::harness
