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

#ifndef WINSOR_DISTRIBUTIONS_HPP_
#define WINSOR_DISTRIBUTIONS_HPP_

#include <stdexcept>
#include <string>

#include "winsor/rng.hpp"

namespace winsor {

// Raised when E|X - mu|^m is infinite for the requested m.
class MomentDoesNotExist : public std::domain_error {
 public:
  explicit MomentDoesNotExist(const std::string& what)
      : std::domain_error(what) {}
};

// Pareto(t, gamma) by inversion: t (1 - u)^{-1/gamma}, support [t, inf).
double sample_pareto(double t, double gamma, double u);

// Half-atom / half-Pareto mixture with mean zero:
//   0.5 delta_{-b} + 0.5 (Pareto(t, gamma) - b),  b = gamma t / (2 (gamma - 1)).
// Its median is -b. Draw order: branch uniform, then the Pareto uniform.
double mixture_shift(double t, double gamma);
double sample_mixture(double t, double gamma, CounterRng& rng);

// inf{x : F(x) >= p} for the mixture above.
double mixture_quantile(double p, double t, double gamma);

// Student-t as Z / sqrt(V / df), Z standard normal and V chi-square(df), both
// drawn from rng in that order.
double sample_student_t(double df, CounterRng& rng);

class DistributionSpec {
 public:
  enum class Kind { kParetoMixture, kStudentT };

  static DistributionSpec pareto_mixture(double t, double gamma);
  static DistributionSpec student_t(double df);

  Kind kind() const { return kind_; }
  double t() const { return t_; }
  double gamma() const { return gamma_; }
  double df() const { return gamma_; }

  // Tail index: gamma for the mixture, df for Student-t. Absolute moments of
  // order m exist iff m < tail_index().
  double tail_index() const { return gamma_; }

  double mean() const { return 0.0; }
  double median() const;
  double quantile(double p) const;
  double draw(CounterRng& rng) const;

  std::string describe() const;

 private:
  DistributionSpec(Kind kind, double t, double gamma)
      : kind_(kind), t_(t), gamma_(gamma) {}

  Kind kind_;
  double t_;
  double gamma_;
};

// sigma_m = (E|X - mu|^m)^{1/m} by numerical quadrature (relative tolerance
// well below 1e-6). Throws MomentDoesNotExist when m >= tail_index().
double sigma_m_numeric(const DistributionSpec& dist, double m);

}  // namespace winsor

#endif  // WINSOR_DISTRIBUTIONS_HPP_
