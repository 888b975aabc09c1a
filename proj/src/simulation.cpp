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

#include "winsor/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "winsor/adaptive.hpp"
#include "winsor/estimators.hpp"

namespace winsor {
namespace {

constexpr struct {
  EstimatorKind kind;
  const char* name;
} kKindNames[] = {
    {EstimatorKind::kSampleMean, "sample_mean"},
    {EstimatorKind::kWinsorized, "winsorized"},
    {EstimatorKind::kTrimmed, "trimmed"},
    {EstimatorKind::kLm21, "lm21"},
    {EstimatorKind::kMedianOfMeans, "median_of_means"},
    {EstimatorKind::kAdaptive, "adaptive"},
    {EstimatorKind::kAdaptiveGrid, "adaptive_grid"},
};

bool needs_sigma(EstimatorKind kind) {
  return kind == EstimatorKind::kAdaptive || kind == EstimatorKind::kAdaptiveGrid;
}

EstimatorParams winsor_params(const EstimatorSpec& spec, std::size_t n) {
  EstimatorParams p;
  p.lambda1 = spec.lambda1;
  p.lambda2 = spec.lambda2;
  p.delta = spec.delta;
  p.eta = spec.eta;
  p.n = n;
  return p;
}

EstimatorOutcome ok(double estimate) {
  return {OutcomeStatus::kOk, estimate};
}

EstimatorOutcome failed(OutcomeStatus status) { return {status, 0.0}; }

}  // namespace

AdversarySpec AdversarySpec::replace_with_quantile(double fraction,
                                                   double quantile_p) {
  AdversarySpec adv;
  adv.kind = Kind::kReplaceWithQuantile;
  adv.fraction = fraction;
  adv.quantile_p = quantile_p;
  return adv;
}

std::size_t AdversarySpec::budget(std::size_t n) const {
  if (kind == Kind::kNone) return 0;
  return std::min(n, floor_index(fraction * static_cast<double>(n)));
}

Contamination contaminate(std::span<const double> xs, const AdversarySpec& adv,
                          const DistributionSpec& dist, CounterRng& rng) {
  Contamination out;
  out.sample.assign(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  const std::size_t count = adv.budget(n);
  if (count == 0) return out;
  const double value = dist.quantile(adv.quantile_p);
  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(positions[i], positions[j]);
    out.sample[positions[i]] = value;
  }
  out.outlier_count = count;
  return out;
}

const char* estimator_kind_name(EstimatorKind kind) {
  for (const auto& entry : kKindNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "unknown";
}

std::optional<EstimatorKind> estimator_kind_from_name(const std::string& name) {
  for (const auto& entry : kKindNames) {
    if (name == entry.name) return entry.kind;
  }
  return std::nullopt;
}

void SimConfig::validate() const {
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (replications == 0) {
    throw std::invalid_argument("replications must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (adversary.kind == AdversarySpec::Kind::kReplaceWithQuantile) {
    if (!(adversary.fraction >= 0.0 && adversary.fraction <= 1.0)) {
      throw std::invalid_argument("adversary fraction must lie in [0, 1]");
    }
    if (!(adversary.quantile_p > 0.0 && adversary.quantile_p < 1.0)) {
      throw std::invalid_argument("adversary quantile_p must lie in (0, 1)");
    }
  }
  if (estimators.empty()) {
    throw std::invalid_argument("at least one estimator is required");
  }
  std::set<std::string> labels;
  for (const auto& e : estimators) {
    if (e.label.empty()) throw std::invalid_argument("estimator label is empty");
    if (!labels.insert(e.label).second) {
      throw std::invalid_argument("duplicate estimator label '" + e.label + "'");
    }
  }
}

double SimConfig::eta_min() const {
  return static_cast<double>(adversary.budget(n)) / static_cast<double>(n);
}

const char* status_name(OutcomeStatus status) {
  switch (status) {
    case OutcomeStatus::kOk:
      return "ok";
    case OutcomeStatus::kNotImplementable:
      return "not_implementable";
    case OutcomeStatus::kNoFeasibleLevel:
      return "no_feasible_level";
  }
  return "unknown";
}

ReplicationData draw_replication(const SimConfig& cfg, std::size_t rep) {
  const CounterRng stream = replication_stream(cfg.master_seed, rep);
  CounterRng data_rng = stream.substream(0);
  CounterRng adversary_rng = stream.substream(1);
  ReplicationData data;
  data.clean.resize(cfg.n);
  for (double& x : data.clean) x = cfg.distribution.draw(data_rng);
  data.contaminated =
      contaminate(data.clean, cfg.adversary, cfg.distribution, adversary_rng);
  return data;
}

std::vector<double> resolve_sigmas(const SimConfig& cfg) {
  std::vector<double> sigmas(cfg.estimators.size(), 0.0);
  for (std::size_t i = 0; i < cfg.estimators.size(); ++i) {
    const auto& e = cfg.estimators[i];
    if (!needs_sigma(e.kind)) continue;
    sigmas[i] = e.sigma_policy == SigmaPolicy::kFixed
                    ? e.sigma_value
                    : sigma_m_numeric(cfg.distribution, e.m);
  }
  return sigmas;
}

EstimatorOutcome evaluate_estimator(const EstimatorSpec& spec,
                                    std::span<const double> sample,
                                    double sigma_m) {
  const std::size_t n = sample.size();
  switch (spec.kind) {
    case EstimatorKind::kSampleMean:
      return ok(sample_mean(sample));
    case EstimatorKind::kWinsorized: {
      const double eps = epsilon_of_eta(winsor_params(spec, n));
      if (!(eps > 0.0 && eps <= 0.5)) {
        return failed(OutcomeStatus::kNotImplementable);
      }
      return ok(winsorized_mean(sample, eps));
    }
    case EstimatorKind::kTrimmed: {
      const double eps =
          spec.trim ? *spec.trim : epsilon_of_eta(winsor_params(spec, n));
      if (!(eps > 0.0 && eps < 0.5) || 2 * ceil_index(eps * n) >= n) {
        return failed(OutcomeStatus::kNotImplementable);
      }
      return ok(trimmed_mean(sample, eps));
    }
    case EstimatorKind::kLm21: {
      const auto est = lm21_winsorized_mean(sample, spec.eta, spec.delta);
      return est ? ok(*est) : failed(OutcomeStatus::kNotImplementable);
    }
    case EstimatorKind::kMedianOfMeans: {
      const std::size_t k =
          spec.mom_blocks ? std::min(*spec.mom_blocks, n)
                          : mom_block_count(spec.delta, n);
      return ok(median_of_means(sample, k));
    }
    case EstimatorKind::kAdaptive:
    case EstimatorKind::kAdaptiveGrid: {
      AdaptiveParams p;
      p.sigma_m = sigma_m;
      p.m = spec.m;
      p.rho = spec.rho;
      p.delta = spec.delta;
      p.lambda1 = spec.lambda1;
      p.lambda2 = spec.lambda2;
      const auto res = adaptive_estimate(sample, p);
      if (!res) return failed(OutcomeStatus::kNoFeasibleLevel);
      if (spec.kind == EstimatorKind::kAdaptive) {
        return ok(res->estimate_midpoint);
      }
      return res->estimate_grid ? ok(*res->estimate_grid)
                                : failed(OutcomeStatus::kNotImplementable);
    }
  }
  throw std::logic_error("evaluate_estimator: unhandled estimator kind");
}

ReplicationRecord run_replication(const SimConfig& cfg,
                                  std::span<const double> sigmas,
                                  std::size_t rep) {
  const ReplicationData data = draw_replication(cfg, rep);
  const double mu = cfg.distribution.mean();
  ReplicationRecord record;
  record.outlier_count = data.contaminated.outlier_count;
  record.outcomes.reserve(cfg.estimators.size());
  for (std::size_t i = 0; i < cfg.estimators.size(); ++i) {
    EstimatorOutcome outcome =
        evaluate_estimator(cfg.estimators[i], data.contaminated.sample, sigmas[i]);
    if (outcome.status == OutcomeStatus::kOk) outcome.error -= mu;
    record.outcomes.push_back(outcome);
  }
  return record;
}

ReplicationRecord run_replication(const SimConfig& cfg, std::size_t rep) {
  const auto sigmas = resolve_sigmas(cfg);
  return run_replication(cfg, sigmas, rep);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double quantile_type7(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::domain_error("quantile_type7: empty input");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("quantile_type7: p must lie in [0, 1]");
  }
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

SimResult run_study(const SimConfig& cfg, std::size_t workers) {
  cfg.validate();
  const auto sigmas = resolve_sigmas(cfg);

  SimResult result;
  result.records.resize(cfg.replications);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, cfg.replications);

  // Each replication writes only its own slot, so the records are identical
  // for any worker count or schedule.
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed_flag{false};
  auto work = [&](std::exception_ptr& err) {
    try {
      for (std::size_t rep = next++; rep < cfg.replications && !failed_flag;
           rep = next++) {
        result.records[rep] = run_replication(cfg, sigmas, rep);
      }
    } catch (...) {
      err = std::current_exception();
      failed_flag = true;
    }
  };
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  for (std::size_t w = 1; w < workers; ++w) {
    threads.emplace_back(work, std::ref(errors[w]));
  }
  work(errors[0]);
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (std::size_t i = 0; i < cfg.estimators.size(); ++i) {
    EstimatorSummary s;
    s.label = cfg.estimators[i].label;
    std::vector<double> errs;
    std::vector<double> abs_errs;
    errs.reserve(cfg.replications);
    abs_errs.reserve(cfg.replications);
    for (const auto& rec : result.records) {
      const auto& o = rec.outcomes[i];
      if (o.status != OutcomeStatus::kOk) {
        ++s.failures;
        continue;
      }
      errs.push_back(o.error);
      abs_errs.push_back(std::fabs(o.error));
    }
    s.successes = errs.size();
    if (!errs.empty()) {
      s.mae = pairwise_sum(abs_errs) / static_cast<double>(abs_errs.size());
      std::sort(errs.begin(), errs.end());
      s.q05 = quantile_type7(errs, 0.05);
      s.q25 = quantile_type7(errs, 0.25);
      s.q50 = quantile_type7(errs, 0.50);
      s.q75 = quantile_type7(errs, 0.75);
      s.q95 = quantile_type7(errs, 0.95);
    }
    result.summaries.push_back(std::move(s));
  }
  return result;
}

}  // namespace winsor
