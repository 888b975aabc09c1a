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

#ifndef WINSOR_ADAPTIVE_HPP_
#define WINSOR_ADAPTIVE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "winsor/theory_bounds.hpp"

namespace winsor {

// Geometric grid of candidate contamination levels eta_j = rho^j / 2,
// j = 1..g_max, with g_max = ceil(log_rho(2 log(6/delta) / n)).
struct LepskiGrid {
  double rho = 0.5;
  double delta = 0.01;
  std::size_t n = 0;
  std::size_t g_max = 0;
  std::vector<double> etas;

  // log(6 g_max / delta) / n, the sampling term shared by every level.
  double log_term() const;
};

// Throws std::domain_error unless rho in (0, 1), n >= 4 and
// 6 exp(-n/2) < delta < 1.
LepskiGrid build_grid(double rho, double delta, std::size_t n);

// Level-j winsorization: lambda1 eta_j + lambda2 log(6 g_max / delta) / n.
double eps_A(double eta_j, const LepskiGrid& grid, double lambda1,
             double lambda2);

// 2 eps + L + sqrt(L^2 + 4 L eps) < 1 with L = grid.log_term().
bool level_feasible(double eps, const LepskiGrid& grid);

// Radius of the level interval at contamination z:
//   sigma_m (frak_A z^{1-1/m} + frak_B L^{1 - 1/min(m,2)}).
double B_of(double z, double sigma_m, const BoundConstants& k,
            const LepskiGrid& grid);
double B_of(double z, double sigma_m, double m, double lambda1,
            double lambda2, const LepskiGrid& grid);

// One level's confidence set: a closed ball, or the whole line when the
// level's winsorization is infeasible.
struct LevelInterval {
  std::size_t level = 0;  // 1-based
  bool whole_line = true;
  double center = 0.0;
  double radius = 0.0;
};

struct AdaptiveParams {
  double sigma_m = 1.0;
  double m = 2.0;
  double rho = 0.5;
  double delta = 0.01;
  double lambda1 = 1.5;
  double lambda2 = 0.2;
};

struct AdaptiveResult {
  std::size_t g_hat = 0;
  // Midpoint of the intersection of the first g_hat level intervals.
  double estimate_midpoint = 0.0;
  // Winsorized mean at level g_hat; nullopt if that level's eps exceeds 1/2.
  std::optional<double> estimate_grid;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<LevelInterval> intervals;
  LepskiGrid grid;
};

// Lepski selection over the grid. Returns nullopt (no feasible level) when
// every level interval is the whole line.
std::optional<AdaptiveResult> adaptive_estimate(std::span<const double> xs,
                                                const AdaptiveParams& params);

// Selection from prebuilt level intervals; exposed for testing the prefix
// intersection rule on its own.
struct PrefixIntersection {
  std::size_t g_hat = 0;
  bool bounded = false;
  double lo = 0.0;
  double hi = 0.0;
};
PrefixIntersection intersect_prefix(std::span<const LevelInterval> intervals);

// Fraction of altered observations, outlier_count / n.
double eta_min_of(std::size_t outlier_count, std::size_t n);

// Largest j with eta_min <= eta_j, or 0 when eta_min > eta_1.
std::size_t oracle_level(double eta_min, const LepskiGrid& grid);

}  // namespace winsor

#endif  // WINSOR_ADAPTIVE_HPP_
