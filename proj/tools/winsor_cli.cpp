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

// Command-line front end: point estimation on a data file, bound evaluation,
// feasibility checks and simulation studies driven by a JSON config.
//
//   winsor estimate --data FILE [--eta E] [--lambda1 L1] [--lambda2 L2]
//                   [--delta D] [--eps EPS] [--sigma S --m M] [--out FILE]
//   winsor bound    --sigma S --m M --n N [--eta E] [--lambda1 L1]
//                   [--lambda2 L2] [--delta D] [--rho R --eta-min Z]
//   winsor feasible --n N [--eta E] [--lambda1 L1] [--lambda2 L2] [--delta D]
//   winsor simulate --config FILE [--out FILE] [--seed S] [--workers K]
//                   [--raw-errors]
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error.

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "winsor/adaptive.hpp"
#include "winsor/csv.hpp"
#include "winsor/estimators.hpp"
#include "winsor/simulation.hpp"
#include "winsor/study_config.hpp"
#include "winsor/theory_bounds.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

// Collects "key: value" lines and sends them to --out or stdout.
class Report {
 public:
  void add(const std::string& key, const std::string& value) {
    os_ << key << ": " << value << '\n';
  }
  void add(const std::string& key, double value) { add(key, fmt6(value)); }
  void add(const std::string& key, bool value) {
    add(key, std::string(yes_no(value)));
  }
  void add(const std::string& key, std::size_t value) {
    add(key, std::to_string(value));
  }

  void emit(const std::string& out_path) const {
    if (out_path.empty()) {
      std::cout << os_.str();
      return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
    out << os_.str();
  }

 private:
  std::ostringstream os_;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<double> read_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file '" + path + "'");
  std::vector<double> xs;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const std::string tok = trim(line);
    if (tok.empty() || tok[0] == '#') continue;
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (*first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
      throw DataError(path + ": line " + std::to_string(lineno) +
                      ": not a finite number: '" + tok + "'");
    }
    xs.push_back(v);
  }
  if (xs.empty()) throw DataError(path + ": no data values");
  return xs;
}

struct CommonParams {
  double lambda1 = 1.01;
  double lambda2 = 0.2;
  double delta = 0.01;
  double eta = 0.0;
};

void add_common(CLI::App* cmd, CommonParams& p) {
  cmd->add_option("--lambda1", p.lambda1, "Contamination multiplier (> 1)")
      ->capture_default_str();
  cmd->add_option("--lambda2", p.lambda2, "Sampling multiplier (> 0)")
      ->capture_default_str();
  cmd->add_option("--delta", p.delta, "Failure probability in (0, 1)")
      ->capture_default_str();
  cmd->add_option("--eta", p.eta, "Assumed contamination fraction")
      ->capture_default_str();
}

winsor::EstimatorParams to_params(const CommonParams& c, std::size_t n) {
  winsor::EstimatorParams p;
  p.lambda1 = c.lambda1;
  p.lambda2 = c.lambda2;
  p.delta = c.delta;
  p.eta = c.eta;
  p.n = n;
  p.validate();
  return p;
}

void add_feasibility(Report& r, const winsor::EstimatorParams& p, double eps) {
  r.add("eps", eps);
  const double l = std::log(6.0 / p.delta) / static_cast<double>(p.n);
  const double simple = 2.0 * eps + l + std::sqrt(l * l + 4.0 * l * eps);
  r.add("simple_lhs", simple);
  r.add("simple_ok", simple < 1.0);
  try {
    const auto rep = winsor::check_feasibility(p, eps);
    r.add("lambert_lhs", rep.lambert_lhs);
    r.add("lambert_ok", rep.lambert_ok);
  } catch (const std::domain_error&) {
    r.add("lambert_lhs", std::string("undefined"));
    r.add("lambert_ok", false);
  }
  r.add("implementable", eps > 0.0 && eps <= 0.5);
}

struct EstimateArgs {
  CommonParams common;
  std::string data;
  std::optional<double> eps;
  std::optional<double> sigma;
  double m = 2.0;
  std::string out;
};

int cmd_estimate(const EstimateArgs& a) {
  const auto xs = read_data(a.data);
  const auto p = to_params(a.common, xs.size());
  const double eps = a.eps ? *a.eps : winsor::epsilon_of_eta(p);
  if (!(eps > 0.0)) throw std::invalid_argument("--eps must be positive");
  Report r;
  r.add("n", xs.size());
  add_feasibility(r, p, eps);
  if (!(eps <= 0.5)) {
    r.emit(a.out);
    std::cerr << "error: eps = " << fmt6(eps)
              << " exceeds 1/2; the winsorized mean is not defined\n";
    return kExitUsage;
  }
  const auto fit = winsor::winsorized_fit(xs, eps);
  r.add("alpha", fit.alpha);
  r.add("beta", fit.beta);
  r.add("estimate", fit.estimate);
  if (a.sigma) {
    r.add("bound", winsor::theorem1_bound(*a.sigma, a.m, p.lambda1, p.lambda2,
                                          p.eta, p.delta, p.n));
  }
  r.emit(a.out);
  return kExitOk;
}

struct BoundArgs {
  CommonParams common;
  double sigma = 1.0;
  double m = 2.0;
  std::size_t n = 0;
  std::optional<double> rho;
  std::optional<double> eta_min;
  std::string out;
};

int cmd_bound(const BoundArgs& a) {
  const auto p = to_params(a.common, a.n);
  if (!(a.sigma >= 0.0)) throw std::invalid_argument("--sigma must be >= 0");
  const auto k = winsor::bound_constants(a.m, p.lambda1, p.lambda2);
  Report r;
  r.add("frak_l", k.frak_l);
  r.add("frak_u", k.frak_u);
  r.add("A_m", k.a_m_l1);
  r.add("Bbar_m", k.bbar_m);
  r.add("frak_A", k.frak_a);
  r.add("frak_B", k.frak_b);
  r.add("frak_C", k.frak_c);
  const double log_term = std::log(6.0 / p.delta) / static_cast<double>(p.n);
  r.add("eta_term", a.sigma * k.frak_a * winsor::contamination_power(p.eta, a.m));
  r.add("sampling_term",
        a.sigma * k.frak_b * winsor::sampling_term(log_term, a.m));
  r.add("theorem1_bound", winsor::theorem1_bound(a.sigma, k, p.eta, p.delta, p.n));
  if (a.rho) {
    const auto grid = winsor::build_grid(*a.rho, p.delta, p.n);
    const double eta_min = a.eta_min ? *a.eta_min : p.eta;
    r.add("g_max", grid.g_max);
    r.add("theorem2_bound",
          winsor::theorem2_bound(a.sigma, a.m, p.lambda1, p.lambda2, eta_min,
                                 *a.rho, p.delta, p.n, grid.g_max));
  }
  r.emit(a.out);
  return kExitOk;
}

struct FeasibleArgs {
  CommonParams common;
  std::size_t n = 0;
  std::string out;
};

int cmd_feasible(const FeasibleArgs& a) {
  const auto p = to_params(a.common, a.n);
  Report r;
  add_feasibility(r, p, winsor::epsilon_of_eta(p));
  const double lm = winsor::lm21_epsilon(p.n, p.eta, p.delta);
  r.add("lm21_eps", lm);
  r.add("lm21", std::string(lm <= 0.5 && p.eta < 1.0 / 16.0
                                ? "implementable"
                                : "not implementable"));
  r.emit(a.out);
  return kExitOk;
}

struct SimulateArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 1;
  bool raw_errors = false;
};

std::string raw_path_for(const std::string& out) {
  const std::string ext = ".csv";
  if (out.size() > ext.size() &&
      out.compare(out.size() - ext.size(), ext.size(), ext) == 0) {
    return out.substr(0, out.size() - ext.size()) + "_raw.csv";
  }
  return out + "_raw.csv";
}

int cmd_simulate(const SimulateArgs& a) {
  auto cfg = winsor::load_study_config(a.config);
  if (a.seed) cfg.master_seed = *a.seed;
  if (a.raw_errors && a.out.empty()) {
    throw std::invalid_argument("--raw-errors requires --out");
  }
  const auto result = winsor::run_study(cfg, a.workers);
  if (a.out.empty()) {
    winsor::write_summary_csv(std::cout, cfg, result);
    return kExitOk;
  }
  std::ofstream out(a.out, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + a.out + "'");
  winsor::write_summary_csv(out, cfg, result);
  if (a.raw_errors) {
    const std::string raw = raw_path_for(a.out);
    std::ofstream raw_out(raw, std::ios::binary);
    if (!raw_out) throw std::invalid_argument("cannot write '" + raw + "'");
    winsor::write_raw_csv(raw_out, cfg, result);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Winsorized mean estimation under adversarial contamination"};
  app.require_subcommand(1);

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Winsorized mean of a data file");
  estimate->add_option("--data", est.data, "One number per line; # comments")
      ->required();
  add_common(estimate, est.common);
  estimate->add_option("--eps", est.eps, "Override the winsorization level");
  estimate->add_option("--sigma", est.sigma, "sigma_m, to report the bound");
  estimate->add_option("--m", est.m, "Moment order for the bound")
      ->capture_default_str();
  estimate->add_option("--out", est.out, "Write the report here");

  BoundArgs bnd;
  auto* bound = app.add_subcommand("bound", "Evaluate the deviation bounds");
  add_common(bound, bnd.common);
  bound->add_option("--sigma", bnd.sigma, "sigma_m")->required();
  bound->add_option("--m", bnd.m, "Moment order (>= 1)")->required();
  bound->add_option("--n", bnd.n, "Sample size")->required();
  bound->add_option("--rho", bnd.rho, "Grid ratio; adds the adaptive bound");
  bound->add_option("--eta-min", bnd.eta_min,
                    "True contamination for the adaptive bound");
  bound->add_option("--out", bnd.out, "Write the report here");

  FeasibleArgs fea;
  auto* feasible = app.add_subcommand("feasible", "Check the conditions on eps");
  add_common(feasible, fea.common);
  feasible->add_option("--n", fea.n, "Sample size")->required();
  feasible->add_option("--out", fea.out, "Write the report here");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo study");
  simulate->add_option("--config", sim.config, "Study config (JSON)")->required();
  simulate->add_option("--out", sim.out, "Summary CSV (stdout if omitted)");
  simulate->add_option("--seed", sim.seed, "Override the master seed");
  simulate->add_option("--workers", sim.workers, "Worker threads (0 = all cores)")
      ->capture_default_str();
  simulate->add_flag("--raw-errors", sim.raw_errors,
                     "Also write per-replication errors to <out>_raw.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*estimate) return cmd_estimate(est);
    if (*bound) return cmd_bound(bnd);
    if (*feasible) return cmd_feasible(fea);
    if (*simulate) return cmd_simulate(sim);
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const winsor::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
