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

// Independent reference computations for the unit and acceptance tests.
// Nothing here calls into the library under test.

#ifndef WINSOR_TESTS_ORACLES_HPP_
#define WINSOR_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/lambert_w.hpp>

namespace winsor::oracle {

using Real = long double;

// Bisection on a monotone function over [lo, hi]; `increasing` gives the
// direction. 300 halvings exhaust long double precision on any bracket.
template <class F>
Real bisect(F f, Real target, Real lo, Real hi, bool increasing) {
  for (int i = 0; i < 300; ++i) {
    const Real mid = 0.5L * (lo + hi);
    if (mid == lo || mid == hi) break;
    const bool above = f(mid) > target;
    if (above == increasing) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5L * (lo + hi);
}

// log c solving A log(A/c) + c - A = r for c in (0, A), searched in
// u = log c so that underflowing solutions remain resolvable.
inline Real log_f_inverse(Real r, Real a) {
  auto f = [a](Real u) { return a * (std::log(a) - u) + std::exp(u) - a; };
  const Real hi = std::log(a);
  const Real lo = hi - (r + a) / a - 5.0L;
  return bisect(f, r, lo, hi, /*increasing=*/false);
}

// c > A solving A log(A/c) + c - A = r.
inline Real g_inverse(Real r, Real a) {
  auto g = [a](Real c) { return a * std::log(a / c) + c - a; };
  return bisect(g, r, a, a + 2.0L * r + 4.0L * std::sqrt(r * r + a * r) + 1.0L,
                /*increasing=*/true);
}

// Lambert W branches via Boost, for cross-checking.
inline double w0(double x) { return boost::math::lambert_w0(x); }
inline double wm1(double x) { return boost::math::lambert_wm1(x); }

// E[P^k] for P ~ Pareto(t, gamma), k < gamma.
inline Real pareto_moment(Real t, Real gamma, int k) {
  return gamma * std::pow(t, static_cast<Real>(k)) / (gamma - k);
}

// Integer central absolute moments of the mean-zero mixture
// 0.5 delta_{-b} + 0.5 (Pareto(t, gamma) - b), for k in {2, 3}. The Pareto
// branch never lies below t - b >= 0 when b <= t, so |.| is the identity
// there; for b > t the caller must not use this.
inline Real mixture_central_moment(Real t, Real gamma, int k) {
  const Real b = gamma * t / (2.0L * (gamma - 1.0L));
  Real pareto_part = 0.0L;  // E[(P - b)^k] by the binomial expansion
  Real binom = 1.0L;
  for (int j = 0; j <= k; ++j) {
    const Real pm = j == 0 ? 1.0L : pareto_moment(t, gamma, j);
    pareto_part += binom * pm * std::pow(-b, static_cast<Real>(k - j));
    binom = binom * (k - j) / (j + 1);
  }
  return 0.5L * std::pow(b, static_cast<Real>(k)) + 0.5L * pareto_part;
}

// E|T|^m for Student-t with df > m.
inline double student_t_abs_moment(double df, double m) {
  using boost::math::tgamma;
  return std::pow(df, m / 2.0) * tgamma((m + 1.0) / 2.0) *
         tgamma((df - m) / 2.0) /
         (std::sqrt(std::numbers::pi) * tgamma(df / 2.0));
}

// Winsorized mean straight from its definition, without sorting the sum.
inline double winsorized_mean_naive(std::vector<double> xs, double eps) {
  const std::size_t n = xs.size();
  std::vector<double> s = xs;
  std::sort(s.begin(), s.end());
  auto idx = [n](double v) {
    const auto k = static_cast<std::size_t>(std::ceil(v - 1e-9));
    return std::clamp<std::size_t>(k, 1, n);
  };
  const double alpha = s[idx(eps * n) - 1];
  const double beta = s[idx((1.0 - eps) * n) - 1];
  long double sum = 0.0L;
  for (double x : xs) sum += std::min(std::max(x, alpha), beta);
  return static_cast<double>(sum / n);
}

}  // namespace winsor::oracle

#endif  // WINSOR_TESTS_ORACLES_HPP_
