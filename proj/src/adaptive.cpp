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

#include "winsor/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "winsor/estimators.hpp"

namespace winsor {

double LepskiGrid::log_term() const {
  return std::log(6.0 * static_cast<double>(g_max) / delta) /
         static_cast<double>(n);
}

LepskiGrid build_grid(double rho, double delta, std::size_t n) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw std::domain_error("build_grid: rho must lie in (0, 1)");
  }
  if (n < 4) throw std::domain_error("build_grid: n must be at least 4");
  const double nd = static_cast<double>(n);
  if (!(delta > 6.0 * std::exp(-nd / 2.0) && delta < 1.0)) {
    throw std::domain_error("build_grid: delta must lie in (6 exp(-n/2), 1)");
  }
  LepskiGrid grid;
  grid.rho = rho;
  grid.delta = delta;
  grid.n = n;
  const double target = 2.0 * std::log(6.0 / delta) / nd;
  grid.g_max = std::max<std::size_t>(
      1, ceil_index(std::log(target) / std::log(rho)));
  grid.etas.reserve(grid.g_max);
  double eta = 0.5;
  for (std::size_t j = 1; j <= grid.g_max; ++j) {
    eta *= rho;
    grid.etas.push_back(eta);
  }
  return grid;
}

double eps_A(double eta_j, const LepskiGrid& grid, double lambda1,
             double lambda2) {
  return lambda1 * eta_j + lambda2 * grid.log_term();
}

bool level_feasible(double eps, const LepskiGrid& grid) {
  const double l = grid.log_term();
  return 2.0 * eps + l + std::sqrt(l * l + 4.0 * l * eps) < 1.0;
}

double B_of(double z, double sigma_m, const BoundConstants& k,
            const LepskiGrid& grid) {
  if (!(z >= 0.0)) throw std::domain_error("B_of: z must be >= 0");
  if (sigma_m == 0.0) return 0.0;
  return sigma_m * (k.frak_a * contamination_power(z, k.m) +
                    k.frak_b * sampling_term(grid.log_term(), k.m));
}

double B_of(double z, double sigma_m, double m, double lambda1,
            double lambda2, const LepskiGrid& grid) {
  return B_of(z, sigma_m, bound_constants(m, lambda1, lambda2), grid);
}

PrefixIntersection intersect_prefix(std::span<const LevelInterval> intervals) {
  PrefixIntersection out;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& level : intervals) {
    if (!level.whole_line) {
      const double next_lo = std::max(lo, level.center - level.radius);
      const double next_hi = std::min(hi, level.center + level.radius);
      if (next_lo > next_hi) break;
      lo = next_lo;
      hi = next_hi;
      out.bounded = true;
    }
    ++out.g_hat;
  }
  out.lo = lo;
  out.hi = hi;
  return out;
}

std::optional<AdaptiveResult> adaptive_estimate(std::span<const double> xs,
                                                const AdaptiveParams& params) {
  if (!(params.sigma_m >= 0.0)) {
    throw std::domain_error("adaptive_estimate: sigma_m must be >= 0");
  }
  AdaptiveResult res;
  res.grid = build_grid(params.rho, params.delta, xs.size());
  const auto k = bound_constants(params.m, params.lambda1, params.lambda2);

  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());

  res.intervals.reserve(res.grid.g_max);
  for (std::size_t j = 1; j <= res.grid.g_max; ++j) {
    const double eta_j = res.grid.etas[j - 1];
    const double eps = eps_A(eta_j, res.grid, params.lambda1, params.lambda2);
    LevelInterval level;
    level.level = j;
    if (level_feasible(eps, res.grid)) {
      level.whole_line = false;
      level.center = winsorized_fit_sorted(sorted, eps).estimate;
      level.radius = B_of(eta_j, params.sigma_m, k, res.grid);
    }
    res.intervals.push_back(level);
  }

  const auto prefix = intersect_prefix(res.intervals);
  if (!prefix.bounded) return std::nullopt;
  res.g_hat = prefix.g_hat;
  res.lo = prefix.lo;
  res.hi = prefix.hi;
  res.estimate_midpoint = 0.5 * (res.lo + res.hi);

  const double eps_hat = eps_A(res.grid.etas[res.g_hat - 1], res.grid,
                               params.lambda1, params.lambda2);
  if (eps_hat <= 0.5) {
    res.estimate_grid = winsorized_fit_sorted(sorted, eps_hat).estimate;
  }
  return res;
}

double eta_min_of(std::size_t outlier_count, std::size_t n) {
  if (n == 0 || outlier_count > n) {
    throw std::domain_error("eta_min_of: need 0 <= outlier_count <= n, n > 0");
  }
  return static_cast<double>(outlier_count) / static_cast<double>(n);
}

std::size_t oracle_level(double eta_min, const LepskiGrid& grid) {
  std::size_t level = 0;
  for (std::size_t j = 1; j <= grid.g_max; ++j) {
    if (eta_min <= grid.etas[j - 1]) level = j;
  }
  return level;
}

}  // namespace winsor
