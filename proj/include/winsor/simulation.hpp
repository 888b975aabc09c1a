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

#ifndef WINSOR_SIMULATION_HPP_
#define WINSOR_SIMULATION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "winsor/distributions.hpp"
#include "winsor/rng.hpp"

namespace winsor {

// Replaces floor(fraction * n) positions, chosen uniformly without
// replacement, by the distribution's quantile_p quantile.
struct AdversarySpec {
  enum class Kind { kNone, kReplaceWithQuantile };

  Kind kind = Kind::kNone;
  double fraction = 0.0;
  double quantile_p = 0.99;

  static AdversarySpec none() { return {}; }
  static AdversarySpec replace_with_quantile(double fraction, double quantile_p);

  // Number of altered positions in a sample of size n.
  std::size_t budget(std::size_t n) const;
};

struct Contamination {
  std::vector<double> sample;
  std::size_t outlier_count = 0;
};

// Positions are picked by a partial Fisher-Yates shuffle driven by rng;
// untouched positions keep their input values bit for bit.
Contamination contaminate(std::span<const double> xs, const AdversarySpec& adv,
                          const DistributionSpec& dist, CounterRng& rng);

enum class EstimatorKind {
  kSampleMean,
  kWinsorized,
  kTrimmed,
  kLm21,
  kMedianOfMeans,
  kAdaptive,      // midpoint of the selected intersection
  kAdaptiveGrid,  // winsorized mean at the selected level
};

// Source of sigma_m for estimators that need it (adaptive only).
enum class SigmaPolicy {
  kTrue,   // sigma_m_numeric of the sampling distribution
  kFixed,  // the configured value, e.g. a known upper bound
};

struct EstimatorSpec {
  std::string label;
  EstimatorKind kind = EstimatorKind::kSampleMean;
  double lambda1 = 1.01;
  double lambda2 = 0.2;
  double eta = 0.0;
  double delta = 0.01;
  double rho = 0.5;
  double m = 2.0;
  SigmaPolicy sigma_policy = SigmaPolicy::kTrue;
  double sigma_value = 1.0;
  // Trimming level; defaults to eps(eta) of the winsorized mean with the
  // same lambda1, lambda2, eta and delta.
  std::optional<double> trim;
  // Median-of-means block count; defaults to ceil(8 log(1/delta)).
  std::optional<std::size_t> mom_blocks;
};

const char* estimator_kind_name(EstimatorKind kind);
std::optional<EstimatorKind> estimator_kind_from_name(const std::string& name);

struct SimConfig {
  std::size_t n = 500;
  double m = 2.0;
  DistributionSpec distribution = DistributionSpec::pareto_mixture(2.0, 2.01);
  AdversarySpec adversary;
  std::vector<EstimatorSpec> estimators;
  std::size_t replications = 1000;
  std::uint64_t master_seed = 1;
  double delta = 0.01;

  // Throws std::invalid_argument on n == 0, replications == 0, an empty or
  // duplicate-labelled estimator list, or out-of-range adversary settings.
  void validate() const;

  // Realised contamination fraction floor(fraction n) / n.
  double eta_min() const;
};

enum class OutcomeStatus { kOk, kNotImplementable, kNoFeasibleLevel };
const char* status_name(OutcomeStatus status);

struct EstimatorOutcome {
  OutcomeStatus status = OutcomeStatus::kOk;
  double error = 0.0;  // estimate - mean; meaningful only when kOk
};

struct ReplicationRecord {
  std::size_t outlier_count = 0;
  std::vector<EstimatorOutcome> outcomes;  // one per configured estimator
};

// The clean draw and its contaminated version for one replication. Stream
// layout: substream 0 of the replication stream feeds the n data draws,
// substream 1 feeds the adversary.
struct ReplicationData {
  std::vector<double> clean;
  Contamination contaminated;
};
ReplicationData draw_replication(const SimConfig& cfg, std::size_t rep);

// sigma_m per estimator under its policy; 0 for estimators that ignore it.
std::vector<double> resolve_sigmas(const SimConfig& cfg);

EstimatorOutcome evaluate_estimator(const EstimatorSpec& spec,
                                    std::span<const double> sample,
                                    double sigma_m);

ReplicationRecord run_replication(const SimConfig& cfg,
                                  std::span<const double> sigmas,
                                  std::size_t rep);
ReplicationRecord run_replication(const SimConfig& cfg, std::size_t rep);

struct EstimatorSummary {
  std::string label;
  std::optional<double> mae;  // nullopt when every replication failed
  double q05 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q95 = 0.0;
  std::size_t failures = 0;
  std::size_t successes = 0;
};

struct SimResult {
  std::vector<EstimatorSummary> summaries;
  std::vector<ReplicationRecord> records;  // indexed by replication
};

// Runs every replication on `workers` threads (0 means hardware
// concurrency). The result depends on cfg only.
SimResult run_study(const SimConfig& cfg, std::size_t workers = 1);

// Aggregation helpers, exposed for testing.
double pairwise_sum(std::span<const double> values);
// Type-7 (linear interpolation) sample quantile of sorted values.
double quantile_type7(std::span<const double> sorted, double p);

}  // namespace winsor

#endif  // WINSOR_SIMULATION_HPP_
