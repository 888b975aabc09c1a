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

#include "winsor/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace winsor {
namespace {

constexpr double kInvE = 1.0 / std::numbers::e;
constexpr int kMaxHalleyIterations = 50;
constexpr double kBranchSeriesRadius = 1e-6;

// W around the branch point in p = +-sqrt(2 (e x + 1)); p > 0 selects W0 and
// p < 0 selects W_{-1}.
double branch_point_series(double p) {
  constexpr double k3 = 11.0 / 72.0;
  constexpr double k4 = -43.0 / 540.0;
  constexpr double k5 = 769.0 / 17280.0;
  constexpr double k6 = -221.0 / 8505.0;
  return -1.0 +
         p * (1.0 + p * (-1.0 / 3.0 + p * (k3 + p * (k4 + p * (k5 + p * k6)))));
}

double branch_distance(double x) {
  // e x + 1 computed as a fused operation keeps the small difference accurate.
  return std::max(0.0, std::fma(std::numbers::e, x, 1.0));
}

double halley(double x, double w) {
  for (int it = 0; it < kMaxHalleyIterations; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

void check_branch_lower_bound(double x, const char* name) {
  if (!(x >= -kInvE - kBoundaryTolerance)) {
    throw std::domain_error(std::string(name) + ": argument below -1/e");
  }
}

}  // namespace

double h_plus(double nu) {
  if (!(nu >= 0.0)) throw std::domain_error("h_plus: nu must be >= 0");
  return (1.0 + nu) * std::log1p(nu) - nu;
}

double h_minus(double nu) {
  if (!(nu >= 0.0 && nu < 1.0)) {
    throw std::domain_error("h_minus: nu must lie in [0, 1)");
  }
  return (1.0 - nu) * std::log1p(-nu) + nu;
}

double lambert_w0(double x) {
  check_branch_lower_bound(x, "lambert_w0");
  if (std::isinf(x)) return x;
  if (x == 0.0) return 0.0;
  const double q = branch_distance(x);
  if (q == 0.0) return -1.0;
  if (x < -kInvE + kBranchSeriesRadius) {
    return branch_point_series(std::sqrt(2.0 * q));
  }
  double w;
  if (x < -0.25) {
    w = branch_point_series(std::sqrt(2.0 * q));
  } else if (x < 3.0) {
    w = std::log1p(x);
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  return halley(x, w);
}

double lambert_wm1(double x) {
  check_branch_lower_bound(x, "lambert_wm1");
  if (!(x < 0.0)) throw std::domain_error("lambert_wm1: argument must be < 0");
  const double q = branch_distance(x);
  if (q == 0.0) return -1.0;
  if (x < -kInvE + kBranchSeriesRadius) {
    return branch_point_series(-std::sqrt(2.0 * q));
  }
  double w;
  if (x < -0.25) {
    w = branch_point_series(-std::sqrt(2.0 * q));
  } else {
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }
  return halley(x, w);
}

ExponentContext ExponentContext::make(double lambda1, double eta) {
  if (!(lambda1 > 1.0)) {
    throw std::domain_error("ExponentContext: lambda1 must exceed 1");
  }
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::domain_error("ExponentContext: eta must lie in [0, 1]");
  }
  const double shift = eta > 0.0 ? 1.0 / lambda1 : 0.0;
  return ExponentContext{lambda1, eta, 1.0 - shift, 1.0 + shift};
}

double f_exponent(double c, const ExponentContext& ctx) {
  const double a = ctx.a_plus;
  if (!(c > 0.0 && c < a + kBoundaryTolerance)) {
    throw std::domain_error("f_exponent: c must lie in (0, A+)");
  }
  return std::max(0.0, a * std::log(a / c) + c - a);
}

double g_exponent(double c, const ExponentContext& ctx) {
  const double a = ctx.a_minus;
  if (!(c > a - kBoundaryTolerance) || std::isinf(c)) {
    throw std::domain_error("g_exponent: c must exceed A-");
  }
  return std::max(0.0, a * std::log(a / c) + c - a);
}

// Both inverses solve z - 1 - log z = C with C = r / A and c = A z; the two
// real solutions are z = -W(-exp(-(C + 1))) on the two branches.
double f_inverse(double r, const ExponentContext& ctx) {
  if (!(r > 0.0) || std::isinf(r)) {
    throw std::domain_error("f_inverse: r must be positive and finite");
  }
  const double a = ctx.a_plus;
  return -a * lambert_w0(-std::exp(-(r + a) / a));
}

double log_f_inverse(double r, const ExponentContext& ctx) {
  if (!(r > 0.0) || std::isinf(r)) {
    throw std::domain_error("log_f_inverse: r must be positive and finite");
  }
  const double a = ctx.a_plus;
  const double big_c = r / a;
  const double z = -lambert_w0(-std::exp(-(big_c + 1.0)));
  // log z = z - 1 - C holds exactly at the solution and never underflows.
  return std::log(a) + z - 1.0 - big_c;
}

double g_inverse(double r, const ExponentContext& ctx) {
  if (!(r > 0.0) || std::isinf(r)) {
    throw std::domain_error("g_inverse: r must be positive and finite");
  }
  const double a = ctx.a_minus;
  return -a * lambert_wm1(-std::exp(-(r + a) / a));
}

QuantileFactors c1_c2(std::size_t n, double delta, double eps,
                      const ExponentContext& ctx) {
  if (n == 0) throw std::domain_error("c1_c2: n must be positive");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("c1_c2: delta must lie in (0, 1)");
  }
  if (!(eps > 0.0)) throw std::domain_error("c1_c2: eps must be positive");
  const double r = std::log(6.0 / delta) / (static_cast<double>(n) * eps);
  return QuantileFactors{f_inverse(r, ctx), g_inverse(r, ctx),
                         log_f_inverse(r, ctx)};
}

}  // namespace winsor
