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

#include "winsor/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace winsor {
namespace {

constexpr double kQuadratureTolerance = 1e-10;

// Integrates exp(log_integrand(s)) over [0, inf) where the log-integrand
// eventually decays like -rate * s. The substitution y = rate * s turns the
// slow polynomial tail of the original variable into a unit exponential one.
template <class LogIntegrand>
double integrate_exponential_tail(LogIntegrand log_integrand, double rate) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto h = [&](double y) {
    const double v = log_integrand(y / rate);
    return v < -745.0 ? 0.0 : std::exp(v) / rate;
  };
  return integrator.integrate(h, 0.0, std::numeric_limits<double>::infinity(),
                              kQuadratureTolerance);
}

double mixture_abs_moment(double t, double gamma, double m) {
  const double b = mixture_shift(t, gamma);
  // Pareto branch in s = log(x / t): density gamma e^{-gamma s} on [0, inf),
  // deviation |t e^s - b|. For b > t the deviation has a kink at s0.
  const double s0 = b > t ? std::log(b / t) : 0.0;
  double below = 0.0;
  if (s0 > 0.0) {
    auto f = [&](double s) {
      const double dev = b - t * std::exp(s);
      return gamma * std::exp(-gamma * s) * std::pow(std::max(dev, 0.0), m);
    };
    below = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, 0.0, s0, 15, kQuadratureTolerance);
  }
  const double ratio = b / t;
  auto log_above = [&](double u) {
    const double s = s0 + u;
    const double log_dev = std::log(t) + s + std::log1p(-ratio * std::exp(-s));
    return std::log(gamma) - gamma * s + m * log_dev;
  };
  const double above = integrate_exponential_tail(log_above, gamma - m);
  return 0.5 * std::pow(b, m) + 0.5 * (below + above);
}

double student_t_abs_moment(double df, double m) {
  const double log_norm = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                          0.5 * std::log(df * std::numbers::pi);
  auto density = [&](double x) {
    return std::exp(log_norm - 0.5 * (df + 1.0) * std::log1p(x * x / df));
  };
  auto inner = [&](double x) { return std::pow(x, m) * density(x); };
  const double core = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      inner, 0.0, 1.0, 15, kQuadratureTolerance);
  // x = e^s on [1, inf); log(1 + e^{2s}/df) = 2s - log df + log1p(df e^{-2s}).
  auto log_tail = [&](double s) {
    const double log_kernel =
        2.0 * s - std::log(df) + std::log1p(df * std::exp(-2.0 * s));
    return (m + 1.0) * s + log_norm - 0.5 * (df + 1.0) * log_kernel;
  };
  const double tail = integrate_exponential_tail(log_tail, df - m);
  return 2.0 * (core + tail);
}

}  // namespace

double sample_pareto(double t, double gamma, double u) {
  return t * std::pow(1.0 - u, -1.0 / gamma);
}

double mixture_shift(double t, double gamma) {
  return gamma * t / (2.0 * (gamma - 1.0));
}

double sample_mixture(double t, double gamma, CounterRng& rng) {
  const double b = mixture_shift(t, gamma);
  if (rng.uniform01() < 0.5) return -b;
  return sample_pareto(t, gamma, rng.uniform01()) - b;
}

double mixture_quantile(double p, double t, double gamma) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("mixture_quantile: p must lie in (0, 1)");
  }
  const double b = mixture_shift(t, gamma);
  if (p <= 0.5) return -b;
  return t * std::pow(2.0 * (1.0 - p), -1.0 / gamma) - b;
}

double sample_student_t(double df, CounterRng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::chi_squared_distribution<double> chi2(df);
  const double z = normal(rng);
  const double v = chi2(rng);
  return z / std::sqrt(v / df);
}

DistributionSpec DistributionSpec::pareto_mixture(double t, double gamma) {
  if (!(t > 0.0)) throw std::domain_error("pareto_mixture: t must be > 0");
  if (!(gamma > 1.0)) {
    throw std::domain_error("pareto_mixture: gamma must exceed 1");
  }
  return DistributionSpec(Kind::kParetoMixture, t, gamma);
}

DistributionSpec DistributionSpec::student_t(double df) {
  if (!(df > 1.0)) {
    throw std::domain_error("student_t: df must exceed 1 for a finite mean");
  }
  return DistributionSpec(Kind::kStudentT, 0.0, df);
}

double DistributionSpec::median() const {
  return kind_ == Kind::kParetoMixture ? -mixture_shift(t_, gamma_) : 0.0;
}

double DistributionSpec::quantile(double p) const {
  if (kind_ == Kind::kParetoMixture) return mixture_quantile(p, t_, gamma_);
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("quantile: p must lie in (0, 1)");
  }
  return boost::math::quantile(boost::math::students_t_distribution<double>(gamma_),
                               p);
}

double DistributionSpec::draw(CounterRng& rng) const {
  return kind_ == Kind::kParetoMixture ? sample_mixture(t_, gamma_, rng)
                                       : sample_student_t(gamma_, rng);
}

std::string DistributionSpec::describe() const {
  std::ostringstream os;
  if (kind_ == Kind::kParetoMixture) {
    os << "pareto_mixture(t=" << t_ << ",gamma=" << gamma_ << ")";
  } else {
    os << "student_t(df=" << gamma_ << ")";
  }
  return os.str();
}

double sigma_m_numeric(const DistributionSpec& dist, double m) {
  if (!(m >= 1.0)) throw std::domain_error("sigma_m_numeric: m must be >= 1");
  if (m >= dist.tail_index()) {
    throw MomentDoesNotExist("sigma_m_numeric: E|X - mu|^m is infinite for m = " +
                             std::to_string(m) + " and " + dist.describe());
  }
  const double moment =
      dist.kind() == DistributionSpec::Kind::kParetoMixture
          ? mixture_abs_moment(dist.t(), dist.gamma(), m)
          : student_t_abs_moment(dist.df(), m);
  return std::pow(moment, 1.0 / m);
}

}  // namespace winsor
