// Copyright 2026 The Winsor Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "winsor/study_config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace winsor {
namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) known = known || it.key() == key;
    if (!known) throw ConfigError(join(path, it.key()), "unknown key");
  }
}

const json& require(const json& obj, const std::string& path,
                    const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(join(path, key), "missing field");
  return *it;
}

const json& require_object(const json& v, const std::string& path) {
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  return v;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

std::uint64_t as_count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                 v.get<std::int64_t>() < 0)) {
    throw ConfigError(path, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

double number_or(const json& obj, const std::string& path, const char* key,
                 double fallback) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : as_number(*it, join(path, key));
}

DistributionSpec parse_distribution(const json& v, const std::string& path) {
  require_object(v, path);
  const std::string kind = as_string(require(v, path, "kind"), join(path, "kind"));
  try {
    if (kind == "pareto_mixture") {
      reject_unknown(v, path, {"kind", "t", "gamma"});
      return DistributionSpec::pareto_mixture(
          as_number(require(v, path, "t"), join(path, "t")),
          as_number(require(v, path, "gamma"), join(path, "gamma")));
    }
    if (kind == "student_t") {
      reject_unknown(v, path, {"kind", "df"});
      return DistributionSpec::student_t(
          as_number(require(v, path, "df"), join(path, "df")));
    }
  } catch (const std::domain_error& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(join(path, "kind"), "unknown distribution '" + kind + "'");
}

AdversarySpec parse_adversary(const json& v, const std::string& path) {
  require_object(v, path);
  const std::string kind = as_string(require(v, path, "kind"), join(path, "kind"));
  if (kind == "none") {
    reject_unknown(v, path, {"kind"});
    return AdversarySpec::none();
  }
  if (kind == "replace_with_quantile") {
    reject_unknown(v, path, {"kind", "fraction", "quantile_p"});
    const double fraction =
        as_number(require(v, path, "fraction"), join(path, "fraction"));
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
      throw ConfigError(join(path, "fraction"), "must lie in [0, 1]");
    }
    const double p = number_or(v, path, "quantile_p", 0.99);
    if (!(p > 0.0 && p < 1.0)) {
      throw ConfigError(join(path, "quantile_p"), "must lie in (0, 1)");
    }
    return AdversarySpec::replace_with_quantile(fraction, p);
  }
  throw ConfigError(join(path, "kind"), "unknown adversary '" + kind + "'");
}

EstimatorSpec parse_estimator(const json& v, const std::string& path,
                              const SimConfig& study) {
  require_object(v, path);
  reject_unknown(v, path,
                 {"name", "label", "lambda1", "lambda2", "eta", "delta", "m",
                  "rho", "sigma", "trim", "blocks"});
  const std::string name = as_string(require(v, path, "name"), join(path, "name"));
  const auto kind = estimator_kind_from_name(name);
  if (!kind) {
    throw ConfigError(join(path, "name"), "unknown estimator '" + name + "'");
  }
  EstimatorSpec e;
  e.kind = *kind;
  const bool adaptive =
      e.kind == EstimatorKind::kAdaptive || e.kind == EstimatorKind::kAdaptiveGrid;
  e.label = v.contains("label") ? as_string(v["label"], join(path, "label")) : name;
  e.lambda1 = number_or(v, path, "lambda1", adaptive ? 1.5 : 1.01);
  e.lambda2 = number_or(v, path, "lambda2", 0.2);
  e.eta = number_or(v, path, "eta", 0.0);
  e.delta = number_or(v, path, "delta", study.delta);
  e.m = number_or(v, path, "m", study.m);
  e.rho = number_or(v, path, "rho", 0.5);
  if (!(e.lambda1 > 1.0)) throw ConfigError(join(path, "lambda1"), "must exceed 1");
  if (!(e.lambda2 > 0.0)) throw ConfigError(join(path, "lambda2"), "must be > 0");
  if (!(e.eta >= 0.0 && e.eta <= 1.0)) {
    throw ConfigError(join(path, "eta"), "must lie in [0, 1]");
  }
  if (!(e.delta > 0.0 && e.delta < 1.0)) {
    throw ConfigError(join(path, "delta"), "must lie in (0, 1)");
  }
  if (!(e.m >= 1.0)) throw ConfigError(join(path, "m"), "must be >= 1");
  if (!(e.rho > 0.0 && e.rho < 1.0)) {
    throw ConfigError(join(path, "rho"), "must lie in (0, 1)");
  }
  if (const auto it = v.find("sigma"); it != v.end()) {
    const std::string field = join(path, "sigma");
    if (it->is_string()) {
      if (it->get<std::string>() != "true") {
        throw ConfigError(field, "expected \"true\" or a number");
      }
      e.sigma_policy = SigmaPolicy::kTrue;
    } else {
      e.sigma_policy = SigmaPolicy::kFixed;
      e.sigma_value = as_number(*it, field);
      if (!(e.sigma_value >= 0.0)) throw ConfigError(field, "must be >= 0");
    }
  }
  if (v.contains("trim")) {
    e.trim = as_number(v["trim"], join(path, "trim"));
    if (!(*e.trim > 0.0 && *e.trim < 0.5)) {
      throw ConfigError(join(path, "trim"), "must lie in (0, 1/2)");
    }
  }
  if (v.contains("blocks")) {
    e.mom_blocks = as_count(v["blocks"], join(path, "blocks"));
    if (*e.mom_blocks == 0) throw ConfigError(join(path, "blocks"), "must be >= 1");
  }
  return e;
}

}  // namespace

SimConfig parse_study_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  require_object(root, "");
  reject_unknown(root, "",
                 {"n", "m", "replications", "seed", "delta", "distribution",
                  "adversary", "estimators"});
  SimConfig cfg;
  cfg.n = as_count(require(root, "", "n"), "n");
  if (cfg.n == 0) throw ConfigError("n", "must be positive");
  cfg.m = as_number(require(root, "", "m"), "m");
  if (!(cfg.m >= 1.0)) throw ConfigError("m", "must be >= 1");
  cfg.replications = as_count(require(root, "", "replications"), "replications");
  if (cfg.replications == 0) throw ConfigError("replications", "must be positive");
  cfg.master_seed = as_count(require(root, "", "seed"), "seed");
  cfg.delta = number_or(root, "", "delta", 0.01);
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
    throw ConfigError("delta", "must lie in (0, 1)");
  }
  cfg.distribution =
      parse_distribution(require(root, "", "distribution"), "distribution");
  if (root.contains("adversary")) {
    cfg.adversary = parse_adversary(root["adversary"], "adversary");
  }
  const json& list = require(root, "", "estimators");
  if (!list.is_array() || list.empty()) {
    throw ConfigError("estimators", "expected a non-empty array");
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    cfg.estimators.push_back(
        parse_estimator(list[i], "estimators[" + std::to_string(i) + "]", cfg));
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("estimators", e.what());
  }
  return cfg;
}

SimConfig load_study_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_study_config(buf.str());
}

}  // namespace winsor
