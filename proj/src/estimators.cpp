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

#include "winsor/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "winsor/special_functions.hpp"

namespace winsor {
namespace {

void require_nonempty(std::span<const double> xs, const char* what) {
  if (xs.empty()) {
    throw std::domain_error(std::string(what) + ": empty sample");
  }
}

std::vector<double> sorted_copy(std::span<const double> xs) {
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

std::size_t ceil_index(double v) {
  const double c = std::ceil(v - kIndexSlack);
  return c <= 0.0 ? 0 : static_cast<std::size_t>(c);
}

std::size_t floor_index(double v) {
  const double f = std::floor(v + kIndexSlack);
  return f <= 0.0 ? 0 : static_cast<std::size_t>(f);
}

double clamp(double x, double alpha, double beta) {
  if (alpha > beta) throw std::domain_error("clamp: alpha > beta");
  if (x < alpha) return alpha;
  if (x > beta) return beta;
  return x;
}

double order_statistic(std::span<const double> xs, std::size_t k) {
  if (k < 1 || k > xs.size()) {
    throw std::out_of_range("order_statistic: k outside [1, n]");
  }
  std::vector<double> v(xs.begin(), xs.end());
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   v.end());
  return v[k - 1];
}

void EstimatorParams::validate() const {
  if (!(lambda1 > 1.0)) throw std::domain_error("lambda1 must exceed 1");
  if (!(lambda2 > 0.0)) throw std::domain_error("lambda2 must be positive");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("delta must lie in (0, 1)");
  }
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::domain_error("eta must lie in [0, 1]");
  }
  if (n == 0) throw std::domain_error("n must be positive");
}

double epsilon_of_eta(const EstimatorParams& p) {
  p.validate();
  return p.lambda1 * p.eta +
         p.lambda2 * std::log(6.0 / p.delta) / static_cast<double>(p.n);
}

FeasibilityReport check_feasibility(const EstimatorParams& p) {
  return check_feasibility(p, epsilon_of_eta(p));
}

FeasibilityReport check_feasibility(const EstimatorParams& p, double eps) {
  p.validate();
  if (!(eps > 0.0)) throw std::domain_error("eps must be positive");
  FeasibilityReport rep;
  rep.eps = eps;
  const double l = std::log(6.0 / p.delta) / static_cast<double>(p.n);
  rep.simple_lhs = 2.0 * eps + l + std::sqrt(l * l + 4.0 * l * eps);
  rep.simple_ok = rep.simple_lhs < 1.0;

  const auto ctx = ExponentContext::make(p.lambda1, p.eta);
  const auto c = c1_c2(p.n, p.delta, eps, ctx);
  rep.lambert_lhs = eps * (c.c1 + c.c2);
  rep.lambert_ok = rep.lambert_lhs < 1.0;

  rep.implementable = eps > 0.0 && eps <= 0.5;
  return rep;
}

WinsorizedFit winsorized_fit_sorted(std::span<const double> sorted,
                                    double eps) {
  require_nonempty(sorted, "winsorized_mean");
  if (!(eps > 0.0 && eps <= 0.5 + kBoundaryTolerance)) {
    throw std::domain_error("winsorized_mean: eps must lie in (0, 1/2]");
  }
  const std::size_t n = sorted.size();
  const double nd = static_cast<double>(n);
  const std::size_t lo = std::clamp<std::size_t>(ceil_index(eps * nd), 1, n);
  const std::size_t hi =
      std::clamp<std::size_t>(ceil_index((1.0 - eps) * nd), 1, n);

  WinsorizedFit fit;
  fit.alpha = sorted[lo - 1];
  fit.beta = sorted[hi - 1];
  double sum = 0.0;
  for (double x : sorted) sum += clamp(x, fit.alpha, fit.beta);
  // The mean of values in [alpha, beta] lies in [alpha, beta]; clamping
  // removes rounding drift and makes alpha == beta exact.
  fit.estimate = std::clamp(sum / nd, fit.alpha, fit.beta);
  return fit;
}

WinsorizedFit winsorized_fit(std::span<const double> xs, double eps) {
  const auto v = sorted_copy(xs);
  return winsorized_fit_sorted(v, eps);
}

double winsorized_mean(std::span<const double> xs, double eps) {
  return winsorized_fit(xs, eps).estimate;
}

double sample_mean(std::span<const double> xs) {
  require_nonempty(xs, "sample_mean");
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double trimmed_mean(std::span<const double> xs, double eps_t) {
  require_nonempty(xs, "trimmed_mean");
  if (!(eps_t > 0.0 && eps_t < 0.5)) {
    throw std::domain_error("trimmed_mean: eps_t must lie in (0, 1/2)");
  }
  const std::size_t n = xs.size();
  const std::size_t k = ceil_index(eps_t * static_cast<double>(n));
  if (2 * k >= n) {
    throw std::domain_error("trimmed_mean: trimming removes every value");
  }
  const auto v = sorted_copy(xs);
  double sum = 0.0;
  for (std::size_t i = k; i < n - k; ++i) sum += v[i];
  return sum / static_cast<double>(n - 2 * k);
}

double lm21_epsilon(std::size_t n, double eta, double delta) {
  if (n == 0) throw std::domain_error("lm21_epsilon: n must be positive");
  return 8.0 * eta + 24.0 * std::log(4.0 / delta) / static_cast<double>(n);
}

std::optional<double> lm21_winsorized_mean(std::span<const double> xs,
                                           double eta, double delta) {
  require_nonempty(xs, "lm21_winsorized_mean");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("lm21_winsorized_mean: delta must lie in (0, 1)");
  }
  const double eps = lm21_epsilon(xs.size(), eta, delta);
  if (eta >= 1.0 / 16.0 || eps > 0.5) return std::nullopt;

  const std::size_t half = xs.size() / 2;
  if (half == 0) return std::nullopt;
  const auto first = sorted_copy(xs.first(half));
  const double hd = static_cast<double>(half);
  const std::size_t lo = std::clamp<std::size_t>(ceil_index(eps * hd), 1, half);
  const std::size_t hi =
      std::clamp<std::size_t>(ceil_index((1.0 - eps) * hd), 1, half);
  const double alpha = first[lo - 1];
  const double beta = first[hi - 1];

  const auto second = xs.subspan(half, half);
  double sum = 0.0;
  for (double x : second) sum += clamp(x, alpha, beta);
  return sum / hd;
}

std::size_t mom_block_count(double delta, std::size_t n) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("mom_block_count: delta must lie in (0, 1)");
  }
  const std::size_t k =
      std::max<std::size_t>(1, ceil_index(8.0 * std::log(1.0 / delta)));
  return std::min(k, n);
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::domain_error("median: empty list");
  const std::size_t n = values.size();
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (n % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

double median_of_means(std::span<const double> xs, std::size_t k) {
  require_nonempty(xs, "median_of_means");
  if (k == 0 || k > xs.size()) {
    throw std::domain_error("median_of_means: need 1 <= k <= n blocks");
  }
  const std::size_t n = xs.size();
  const std::size_t base = n / k;
  const std::size_t extra = n % k;
  std::vector<double> means;
  means.reserve(k);
  std::size_t pos = 0;
  for (std::size_t b = 0; b < k; ++b) {
    const std::size_t len = base + (b < extra ? 1 : 0);
    means.push_back(sample_mean(xs.subspan(pos, len)));
    pos += len;
  }
  return median(std::move(means));
}

double median_of_means(std::span<const double> xs, double delta) {
  return median_of_means(xs, mom_block_count(delta, xs.size()));
}

}  // namespace winsor
