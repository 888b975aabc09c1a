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

#ifndef WINSOR_ESTIMATORS_HPP_
#define WINSOR_ESTIMATORS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace winsor {

// Slack applied before rounding eps * n to an order-statistic index, so that
// analytically integral products stay integral after floating-point error.
inline constexpr double kIndexSlack = 1e-9;

// ceil(v - kIndexSlack) and floor(v + kIndexSlack) as counts.
std::size_t ceil_index(double v);
std::size_t floor_index(double v);

// phi_{alpha,beta}(x): x clamped into [alpha, beta]. Throws std::domain_error
// if alpha > beta.
double clamp(double x, double alpha, double beta);

// k-th smallest value (1-based) of xs with ties kept. Throws std::out_of_range
// unless 1 <= k <= xs.size().
double order_statistic(std::span<const double> xs, std::size_t k);

// Tuning of the winsorization level eps(eta) = lambda1 eta +
// lambda2 log(6/delta) / n.
struct EstimatorParams {
  double lambda1 = 1.01;
  double lambda2 = 0.2;
  double delta = 0.01;
  double eta = 0.0;
  std::size_t n = 1;

  // Throws std::domain_error on lambda1 <= 1, lambda2 <= 0, delta outside
  // (0, 1), eta outside [0, 1] or n == 0.
  void validate() const;
};

double epsilon_of_eta(const EstimatorParams& p);

struct FeasibilityReport {
  double eps = 0.0;
  // Left-hand sides of the two sufficient conditions; each must be < 1.
  double simple_lhs = 0.0;
  double lambert_lhs = 0.0;
  bool simple_ok = false;
  bool lambert_ok = false;
  // eps in (0, 1/2], enough to evaluate the estimator at all.
  bool implementable = false;
};

// simple: 2 eps + L + sqrt(L^2 + 4 L eps) < 1 with L = log(6/delta)/n.
// lambert: eps (c1 + c2) < 1, the sharper condition it implies.
FeasibilityReport check_feasibility(const EstimatorParams& p);
// Same report for an explicitly chosen eps instead of eps(eta).
FeasibilityReport check_feasibility(const EstimatorParams& p, double eps);

// Winsorization thresholds and the resulting mean.
struct WinsorizedFit {
  double alpha = 0.0;
  double beta = 0.0;
  double estimate = 0.0;
};

// Winsorized mean at level eps in (0, 1/2]: every value is clamped into
// [x*_{ceil(eps n)}, x*_{ceil((1-eps) n)}] and the clamped values averaged.
// The sum runs over the sorted sample, so the result is bit-identical for
// every permutation of xs.
WinsorizedFit winsorized_fit(std::span<const double> xs, double eps);
double winsorized_mean(std::span<const double> xs, double eps);

// Same as winsorized_fit for input already in non-decreasing order.
WinsorizedFit winsorized_fit_sorted(std::span<const double> sorted, double eps);

double sample_mean(std::span<const double> xs);

// Drops the k = ceil(eps_t n) smallest and k largest values and averages the
// rest. Throws std::domain_error if eps_t is not in (0, 1/2) or 2k >= n.
double trimmed_mean(std::span<const double> xs, double eps_t);

// Sample-split winsorized mean ("lm21").
//
// eps = 8 eta + 24 log(4/delta) / n. Thresholds are the ceil(eps N) and
// ceil((1 - eps) N) order statistics of the first N = floor(n/2) values; the
// clamped average runs over the remaining values. Returns nullopt when the
// recipe is not implementable (eps > 1/2 or eta >= 1/16).
double lm21_epsilon(std::size_t n, double eta, double delta);
std::optional<double> lm21_winsorized_mean(std::span<const double> xs,
                                           double eta, double delta);

// Median-of-means block count ceil(8 log(1/delta)), capped at n.
std::size_t mom_block_count(double delta, std::size_t n);

// Median of the means of k contiguous blocks in input order; the first
// n mod k blocks hold one extra value. An even number of blocks averages the
// two central means. Throws std::domain_error if k == 0 or k > n.
double median_of_means(std::span<const double> xs, std::size_t k);
double median_of_means(std::span<const double> xs, double delta);

// Median of a list, averaging the central pair for even sizes.
double median(std::vector<double> values);

}  // namespace winsor

#endif  // WINSOR_ESTIMATORS_HPP_
