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

#ifndef WINSOR_CSV_HPP_
#define WINSOR_CSV_HPP_

#include <ostream>
#include <string>
#include <string_view>

#include "winsor/simulation.hpp"

namespace winsor {

// Shortest decimal that parses back to exactly x ("nan", "inf", "-inf" for
// non-finite values).
std::string format_shortest(double x);

// RFC 4180 field: quoted, with doubled quotes, when it contains a comma,
// quote, CR or LF; verbatim otherwise.
std::string csv_field(std::string_view field);

// n,m,eta_min,estimator,mae,q05,q25,q50,q75,q95,failures,replications,seed
// One row per estimator; statistic cells are empty when every replication
// failed. Lines end in CRLF as RFC 4180 prescribes.
void write_summary_csv(std::ostream& os, const SimConfig& cfg,
                       const SimResult& result);

// rep,estimator,error,status -- one row per (replication, estimator); the
// error cell is empty for failures.
void write_raw_csv(std::ostream& os, const SimConfig& cfg,
                   const SimResult& result);

}  // namespace winsor

#endif  // WINSOR_CSV_HPP_
