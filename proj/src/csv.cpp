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

#include "winsor/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace winsor {
namespace {

constexpr const char* kEol = "\r\n";

}  // namespace

std::string format_shortest(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_summary_csv(std::ostream& os, const SimConfig& cfg,
                       const SimResult& result) {
  os << "n,m,eta_min,estimator,mae,q05,q25,q50,q75,q95,failures,replications,"
        "seed"
     << kEol;
  const std::string prefix = std::to_string(cfg.n) + "," +
                             format_shortest(cfg.m) + "," +
                             format_shortest(cfg.eta_min()) + ",";
  for (const auto& s : result.summaries) {
    os << prefix << csv_field(s.label) << ',';
    if (s.mae) {
      os << format_shortest(*s.mae) << ',' << format_shortest(s.q05) << ','
         << format_shortest(s.q25) << ',' << format_shortest(s.q50) << ','
         << format_shortest(s.q75) << ',' << format_shortest(s.q95) << ',';
    } else {
      os << ",,,,,,";
    }
    os << s.failures << ',' << cfg.replications << ',' << cfg.master_seed
       << kEol;
  }
}

void write_raw_csv(std::ostream& os, const SimConfig& cfg,
                   const SimResult& result) {
  os << "rep,estimator,error,status" << kEol;
  for (std::size_t rep = 0; rep < result.records.size(); ++rep) {
    const auto& rec = result.records[rep];
    for (std::size_t i = 0; i < rec.outcomes.size(); ++i) {
      const auto& o = rec.outcomes[i];
      os << rep << ',' << csv_field(cfg.estimators[i].label) << ',';
      if (o.status == OutcomeStatus::kOk) os << format_shortest(o.error);
      os << ',' << status_name(o.status) << kEol;
    }
  }
}

}  // namespace winsor
