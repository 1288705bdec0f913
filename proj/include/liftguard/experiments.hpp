// Copyright 2026 The Liftguard Authors
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

#ifndef LIFTGUARD_EXPERIMENTS_HPP_
#define LIFTGUARD_EXPERIMENTS_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "liftguard/lift.hpp"
#include "liftguard/measures.hpp"
#include "liftguard/watchdog.hpp"

namespace liftguard {

enum class SweepMode { kEpsLSweep, kLambdaSweep, kHistogram };

// One point of a budget grid. For lambda sweeps lambda is the configured
// split; for eps_l sweeps it is eps_l / total (0.5 when total is zero).
struct BudgetPoint {
  double eps_l = 0.0;
  double eps_u = 0.0;
  double total_eps = 0.0;
  double lambda = 0.0;

  PrivacyBudget budget() const { return {eps_l, eps_u}; }
};

// Monte-Carlo sweep description. Workers are an execution parameter, not
// part of the configuration: results are byte-identical for any worker
// count, and the manifest echoes only what identifies the experiment.
struct SweepConfig {
  std::string name = "sweep";
  SweepMode mode = SweepMode::kLambdaSweep;
  RandomDrawConfig draw;
  std::vector<double> eps_u_list;     // eps_l_sweep
  std::vector<double> eps_l_grid;     // eps_l_sweep
  std::vector<double> total_eps_list; // lambda_sweep
  std::vector<double> lambda_list;    // lambda_sweep, values in [0,1]
  std::vector<double> alphas = default_alphas();
  Scheme scheme = Scheme::kCompleteMerge;
  int n_bins = 150;
  bool per_draw = false;  // keep per-draw records (and per_draw.csv)

  // Throws ConfigError on empty/unsorted grids, lambdas outside [0,1], bad
  // draw shape or n_bins < 2.
  void validate() const;
};

// One draw at one budget point; measures are computed on the release.
struct ExperimentRecord {
  std::uint64_t draw_id = 0;
  BudgetPoint budget;
  double nmi = 0.0;
  double mi_sy = 0.0;
  double max_leakage = 0.0;
  std::vector<double> sibson;   // aligned with SweepConfig::alphas
  std::vector<double> arimoto;
  double ldp = 0.0;
  double eps_u_star = 0.0;
  double eps_l_star = 0.0;
  bool lower_attained = false;
  bool upper_attained = false;
  double max_xi_released = 0.0;      // max_y xi(y) over the released alphabet
  double max_abs_nu_released = 0.0;  // max_y |nu(y)|
};

struct PointAggregate {
  BudgetPoint budget;
  double mean_nmi = 0.0;
  double lower_rate = 0.0;  // fraction of draws with eps_l* <= eps_l + 1e-9
  double upper_rate = 0.0;
};

struct CdfCurve {
  std::string metric;  // "nmi", "max_xi", "max_abs_nu"
  BudgetPoint budget;
  std::vector<std::pair<double, double>> steps;  // (value, fraction)
};

struct AggregateResult {
  std::vector<double> alphas;         // echo of the config grid
  std::vector<PointAggregate> points;
  std::vector<CdfCurve> cdf_curves;   // lambda sweeps only
  std::vector<ExperimentRecord> per_draw;  // empty unless cfg.per_draw
};

// Mean NMI (and attainment) per (eps_u, eps_l) grid point; all points share
// the same draws (common random numbers), aggregation is in draw order so
// results do not depend on scheduling.
AggregateResult run_eps_l_sweep(const SweepConfig& cfg, int workers = 0);

// Per (total_eps, lambda) point: mean NMI, attainment rates and CDF curves
// of nmi / max_xi / max_abs_nu over the released alphabet. Draws are paired
// across points.
AggregateResult run_lambda_sweep(const SweepConfig& cfg, int workers = 0);

// Pooled nu/xi histogram across draws.
HistogramSummary run_histogram(const SweepConfig& cfg, int workers = 0);

// Right-continuous step CDF over distinct values; +inf values accumulate at
// a terminal overflow point. Throws EmptyInput.
std::vector<std::pair<double, double>> empirical_cdf(
    std::span<const double> values);

// Runs fn(0..n-1) on the given number of threads (hardware concurrency when
// workers <= 0). Work items must write to disjoint slots.
void parallel_for(std::uint64_t n, int workers,
                  const std::function<void(std::uint64_t)>& fn);

}  // namespace liftguard

#endif  // LIFTGUARD_EXPERIMENTS_HPP_
