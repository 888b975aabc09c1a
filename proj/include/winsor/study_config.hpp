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

#ifndef WINSOR_STUDY_CONFIG_HPP_
#define WINSOR_STUDY_CONFIG_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

#include "winsor/simulation.hpp"

namespace winsor {

// Schema violation; field() is the JSON path of the offending value, e.g.
// "estimators[2].name".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Study description in JSON:
//
// {
//   "n": 500, "m": 2, "replications": 20000, "seed": 1, "delta": 0.01,
//   "distribution": {"kind": "pareto_mixture", "t": 2, "gamma": 2.01},
//                 | {"kind": "student_t", "df": 3.01},
//   "adversary": {"kind": "none"}
//              | {"kind": "replace_with_quantile", "fraction": 0.1,
//                 "quantile_p": 0.99},
//   "estimators": [
//     {"name": "winsorized", "label": "mu_0.2", "lambda1": 1.01,
//      "lambda2": 0.2, "eta": 0},
//     {"name": "adaptive", "lambda1": 1.5, "rho": 0.5, "sigma": "true"},
//     ...
//   ]
// }
//
// Estimator names: sample_mean, winsorized, trimmed, lm21, median_of_means,
// adaptive, adaptive_grid. Optional estimator keys: label (defaults to the
// name), lambda1, lambda2, eta, delta and m (default to the study values),
// rho, sigma ("true" or a positive number), trim, blocks. "adversary" and
// "delta" are optional; unknown keys are rejected.
SimConfig parse_study_config(std::string_view json_text);
SimConfig load_study_config(const std::string& path);

}  // namespace winsor

#endif  // WINSOR_STUDY_CONFIG_HPP_
