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

#include "winsor/theory_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace winsor {
namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw std::overflow_error(std::string("bound_constants: ") + name +
                              " is not representable");
  }
}

}  // namespace

BoundConstants bound_constants(double m, double lambda1, double lambda2) {
  if (!(m >= 1.0) || std::isinf(m)) {
    throw std::domain_error("bound_constants: m must lie in [1, inf)");
  }
  if (!(lambda1 > 1.0)) {
    throw std::domain_error("bound_constants: lambda1 must exceed 1");
  }
  if (!(lambda2 > 0.0)) {
    throw std::domain_error("bound_constants: lambda2 must be positive");
  }
  BoundConstants k;
  k.m = m;
  k.lambda1 = lambda1;
  k.lambda2 = lambda2;

  const double a_plus_min = 1.0 - 1.0 / lambda1;
  k.log_frak_l = std::log(a_plus_min) - 1.0 / (lambda2 * a_plus_min) - 1.0;
  k.frak_l = std::exp(k.log_frak_l);
  const double inv_l2 = 1.0 / lambda2;
  k.frak_u = 2.0 + inv_l2 + std::sqrt(inv_l2 * inv_l2 + 4.0 * inv_l2);

  const double inv_m = 1.0 / m;
  k.a_m_l1 = std::exp(-k.log_frak_l * inv_m) + 1.0;
  require_finite(k.a_m_l1, "A_m(l, 1)");
  const double ratio_root = std::exp((std::log(k.frak_u) - k.log_frak_l) * inv_m);
  k.bbar_m = 2.0 + (1.0 + ratio_root) * std::pow(k.frak_u, 1.0 - inv_m);
  require_finite(k.bbar_m, "Bbar_m");

  k.frak_a = std::pow(lambda1, -inv_m) * (k.a_m_l1 + lambda1 * k.bbar_m);
  const double l2_root = std::pow(lambda2, -inv_m);
  const double mm = std::min(m, 2.0);
  k.frak_b = std::numbers::sqrt2 * std::pow(l2_root * k.a_m_l1, 1.0 - mm / 2.0) +
             l2_root * (k.a_m_l1 / 3.0 + lambda2 * k.bbar_m);
  k.frak_c = k.frak_a + k.frak_b;
  require_finite(k.frak_a, "frak_A");
  require_finite(k.frak_b, "frak_B");
  require_finite(k.frak_c, "frak_C");
  return k;
}

double contamination_power(double z, double m) {
  if (z == 0.0) return 0.0;
  return std::pow(z, 1.0 - 1.0 / m);
}

double sampling_term(double log_term, double m) {
  return std::pow(log_term, 1.0 - 1.0 / std::min(m, 2.0));
}

double theorem1_bound(double sigma_m, const BoundConstants& k, double eta,
                      double delta, std::size_t n) {
  if (!(sigma_m >= 0.0)) {
    throw std::domain_error("theorem1_bound: sigma_m must be >= 0");
  }
  if (!(eta >= 0.0 && eta < 1.0)) {
    throw std::domain_error("theorem1_bound: eta must lie in [0, 1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("theorem1_bound: delta must lie in (0, 1)");
  }
  if (n == 0) throw std::domain_error("theorem1_bound: n must be positive");
  if (sigma_m == 0.0) return 0.0;
  const double l = std::log(6.0 / delta) / static_cast<double>(n);
  return sigma_m * (k.frak_a * contamination_power(eta, k.m) +
                    k.frak_b * sampling_term(l, k.m));
}

double theorem1_bound(double sigma_m, double m, double lambda1, double lambda2,
                      double eta, double delta, std::size_t n) {
  return theorem1_bound(sigma_m, bound_constants(m, lambda1, lambda2), eta,
                        delta, n);
}

std::pair<double, double> quantile_mean_bound(double sigma_m, double m,
                                              double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("quantile_mean_bound: p must lie in (0, 1)");
  }
  if (!(m >= 1.0)) throw std::domain_error("quantile_mean_bound: m < 1");
  if (sigma_m == 0.0) return {0.0, 0.0};
  return {-sigma_m / std::pow(p, 1.0 / m),
          sigma_m / std::pow(1.0 - p, 1.0 / m)};
}

double theorem2_bound(double sigma_m, double m, double lambda1, double lambda2,
                      double eta_min, double rho, double delta, std::size_t n,
                      std::size_t g_max) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw std::domain_error("theorem2_bound: rho must lie in (0, 1)");
  }
  if (!(eta_min >= 0.0 && eta_min <= 0.5 * rho)) {
    throw std::domain_error("theorem2_bound: eta_min must lie in [0, rho/2]");
  }
  if (g_max == 0 || n == 0) {
    throw std::domain_error("theorem2_bound: g_max and n must be positive");
  }
  if (!(sigma_m >= 0.0)) {
    throw std::domain_error("theorem2_bound: sigma_m must be >= 0");
  }
  const auto k = bound_constants(m, lambda1, lambda2);
  if (sigma_m == 0.0) return 0.0;
  const double l = std::log(6.0 * static_cast<double>(g_max) / delta) /
                   static_cast<double>(n);
  return 2.0 * sigma_m *
         (k.frak_a * contamination_power(eta_min / rho, m) +
          k.frak_c * sampling_term(l, m));
}

}  // namespace winsor
