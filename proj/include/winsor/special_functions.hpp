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

#ifndef WINSOR_SPECIAL_FUNCTIONS_HPP_
#define WINSOR_SPECIAL_FUNCTIONS_HPP_

#include <cstddef>

namespace winsor {

// Absolute slack accepted at analytically exact domain boundaries (the W
// branch point, c = A+ / A-), where floating point perturbs the argument.
inline constexpr double kBoundaryTolerance = 1e-14;

// Chernoff rate functions of the binomial upper and lower tail:
//   h+(v) = (1+v) log(1+v) - v  on [0, inf)
//   h-(v) = (1-v) log(1-v) + v  on [0, 1)
// Both throw std::domain_error outside their domains.
double h_plus(double nu);
double h_minus(double nu);

// Real branches of Lambert's W, the inverse of w -> w e^w.
//
// lambert_w0 accepts x >= -1/e and returns w >= -1; lambert_wm1 accepts
// -1/e <= x < 0 and returns w <= -1. Arguments below -1/e by no more than
// kBoundaryTolerance are treated as the branch point. Evaluation uses Halley
// iteration from a branch-specific starting point, switching to the
// square-root series around the branch point when |x + 1/e| < 1e-6.
double lambert_w0(double x);
double lambert_wm1(double x);

// Constants of the Chernoff exponent maps for a given lambda1 and eta:
//   A+ = 1 - 1{eta > 0} / lambda1,  A- = 1 + 1{eta > 0} / lambda1.
struct ExponentContext {
  double lambda1 = 2.0;
  double eta = 0.0;
  double a_plus = 1.0;
  double a_minus = 1.0;

  // Throws std::domain_error unless lambda1 > 1 and eta in [0, 1].
  static ExponentContext make(double lambda1, double eta);
};

// f(c) = c h+(A+/c - 1) = A+ log(A+/c) + c - A+ on (0, A+). Strictly
// decreasing from +inf to 0.
double f_exponent(double c, const ExponentContext& ctx);

// g(c) = c h-(1 - A-/c) = A- log(A-/c) + c - A- on (A-, inf). Strictly
// increasing from 0 to +inf.
double g_exponent(double c, const ExponentContext& ctx);

// f^{-1}(r) = -A+ W0(-exp(-(r + A+)/A+)), r > 0. The result lies in
// [A+ exp(-(r + A+)/A+), A+). It underflows to zero once r / A+ exceeds
// roughly 745; use log_f_inverse there.
double f_inverse(double r, const ExponentContext& ctx);

// log f^{-1}(r), finite for every r > 0.
double log_f_inverse(double r, const ExponentContext& ctx);

// g^{-1}(r) = -A- W_{-1}(-exp(-(r + A-)/A-)), r > 0. The result lies in
// [A- + r, A- + r + sqrt(r^2 + 2 A- r)].
double g_inverse(double r, const ExponentContext& ctx);

// Quantile contraction factors for an empirical winsorization level eps:
// with r = log(6/delta) / (n eps), c1 = f^{-1}(r) and c2 = g^{-1}(r).
struct QuantileFactors {
  double c1 = 0.0;
  double c2 = 0.0;
  double log_c1 = 0.0;
};

QuantileFactors c1_c2(std::size_t n, double delta, double eps,
                      const ExponentContext& ctx);

}  // namespace winsor

#endif  // WINSOR_SPECIAL_FUNCTIONS_HPP_
