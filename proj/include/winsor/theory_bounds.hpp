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

#ifndef WINSOR_THEORY_BOUNDS_HPP_
#define WINSOR_THEORY_BOUNDS_HPP_

#include <cstddef>
#include <utility>

namespace winsor {

// Constants of the finite-sample deviation bound for the winsorized mean.
//
//   l      = (1 - 1/lambda1) exp(-1 / (lambda2 (1 - 1/lambda1)) - 1)
//   u      = 2 + 1/lambda2 + sqrt(1/lambda2^2 + 4/lambda2)
//   A_m    = A_m(l, 1) = l^{-1/m} + 1
//   Bbar_m = 2 + [1 + (u/l)^{1/m}] u^{1 - 1/m}
//   frak_A = lambda1^{-1/m} [A_m + lambda1 Bbar_m]
//   frak_B = sqrt(2) (lambda2^{-1/m} A_m)^{1 - (m^2)/2}
//            + lambda2^{-1/m} (A_m / 3 + lambda2 Bbar_m)
//   frak_C = frak_A + frak_B
//
// where (m^2) abbreviates min(m, 2). l is carried as log_frak_l so that l may
// underflow (lambda1 close to 1) while the constants stay finite.
struct BoundConstants {
  double m = 2.0;
  double lambda1 = 1.5;
  double lambda2 = 0.2;
  double log_frak_l = 0.0;
  double frak_l = 0.0;
  double frak_u = 0.0;
  double a_m_l1 = 0.0;
  double bbar_m = 0.0;
  double frak_a = 0.0;
  double frak_b = 0.0;
  double frak_c = 0.0;
};

// Throws std::domain_error on m < 1, lambda1 <= 1 or lambda2 <= 0, and
// std::overflow_error when a constant is not representable.
BoundConstants bound_constants(double m, double lambda1, double lambda2);

// Deviation bound, valid with probability 1 - delta when eps(eta) is feasible:
//   sigma_m (frak_A eta^{1-1/m} + frak_B (log(6/delta)/n)^{1 - 1/(m^2)}).
// With m = 1 and eta = 0 the eta term is zero.
double theorem1_bound(double sigma_m, double m, double lambda1, double lambda2,
                      double eta, double delta, std::size_t n);
double theorem1_bound(double sigma_m, const BoundConstants& k, double eta,
                      double delta, std::size_t n);

// Envelope (lo, hi) for Q_p(Z) - E Z when E|Z - EZ|^m = sigma_m^m:
//   lo = -sigma_m / p^{1/m},  hi = sigma_m / (1 - p)^{1/m}.
std::pair<double, double> quantile_mean_bound(double sigma_m, double m,
                                              double p);

// Deviation bound of the adaptive estimator:
//   2 sigma_m (frak_A (eta_min/rho)^{1-1/m}
//              + frak_C (log(6 g_max / delta)/n)^{1 - 1/(m^2)}).
// Throws std::domain_error if eta_min is outside [0, rho/2].
double theorem2_bound(double sigma_m, double m, double lambda1, double lambda2,
                      double eta_min, double rho, double delta, std::size_t n,
                      std::size_t g_max);

// z^{1 - 1/m} with the convention 0^0 = 0 used for the contamination term.
double contamination_power(double z, double m);

// (log(k / delta) / n)^{1 - 1/min(m, 2)}.
double sampling_term(double log_term, double m);

}  // namespace winsor

#endif  // WINSOR_THEORY_BOUNDS_HPP_
