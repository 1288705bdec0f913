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

#include "liftguard/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace liftguard {

namespace {

void check_grid(const std::vector<double>& grid, const char* name,
                bool unit_range = false) {
  if (grid.empty()) {
    throw ConfigError(std::string(name) + " must be non-empty");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::isnan(grid[i])) throw ConfigError(std::string(name) + " has NaN");
    if (i > 0 && grid[i] < grid[i - 1]) {
      throw ConfigError(std::string(name) + " must be sorted ascending");
    }
    if (unit_range && (grid[i] < 0.0 || grid[i] > 1.0)) {
      throw ConfigError(std::string(name) + " values must lie in [0,1]");
    }
  }
}

BudgetPoint make_point_from_budget(double eps_u, double eps_l) {
  BudgetPoint p;
  p.eps_l = eps_l;
  p.eps_u = eps_u;
  p.total_eps = eps_l + eps_u;
  p.lambda = p.total_eps > 0.0 ? eps_l / p.total_eps : 0.5;
  return p;
}

BudgetPoint make_point_from_lambda(double total_eps, double lambda) {
  BudgetPoint p;
  p.total_eps = total_eps;
  p.lambda = lambda;
  p.eps_l = lambda * total_eps;
  p.eps_u = (1.0 - lambda) * total_eps;
  return p;
}

// What evaluate_point has to materialize. Mean-NMI sweeps only need the
// partition and the merged-set bounds; building the released joint for every
// grid point would dominate the Fig.2-style runs for nothing.
struct EvalOptions {
  bool release_metrics = false;  // max_xi / max_abs_nu over released alphabet
  bool measures = false;         // leakage measures on the released joint
};

ExperimentRecord evaluate_point(const JointDistribution& j,
                                const LiftProfile& profile,
                                std::uint64_t draw_id, const BudgetPoint& point,
                                Scheme scheme, std::span<const double> alphas,
                                const EvalOptions& opt) {
  ExperimentRecord rec;
  rec.draw_id = draw_id;
  rec.budget = point;

  if (!opt.release_metrics && !opt.measures) {
    const auto part = partition(profile, point.budget());
    if (part.high_risk.empty()) {
      rec.eps_u_star = profile.max_xi();
      rec.eps_l_star = profile.max_abs_nu();
    } else {
      const auto b = achieved_bounds(j, part);
      rec.eps_u_star = b.eps_u_star;
      rec.eps_l_star = b.eps_l_star;
    }
    rec.lower_attained = rec.eps_l_star <= point.eps_l + 1e-9;
    rec.upper_attained = rec.eps_u_star <= point.eps_u + 1e-9;
    rec.nmi = watchdog_utility(j, part).nmi;
    return rec;
  }

  auto release = sanitize(j, profile, point.budget(), scheme);
  rec.eps_u_star = release.achieved_eps_u_star;
  rec.eps_l_star = release.achieved_eps_l_star;
  rec.lower_attained = release.lower_attained();
  rec.upper_attained = release.upper_attained();
  rec.nmi = watchdog_utility(j, release.partition).nmi;

  const auto released_profile = lift_profile(release.joint_sy);
  rec.max_xi_released = released_profile.max_xi();
  rec.max_abs_nu_released = released_profile.max_abs_nu();

  if (opt.measures) {
    rec.mi_sy = mutual_information(release.joint_sy);
    rec.max_leakage = maximal_leakage(release.joint_sy);
    rec.ldp = ldp_factor(release.joint_sy);
    rec.sibson.reserve(alphas.size());
    rec.arimoto.reserve(alphas.size());
    for (double a : alphas) {
      rec.sibson.push_back(sibson_mi(release.joint_sy, a));
      rec.arimoto.push_back(arimoto_mi(release.joint_sy, a));
    }
  }
  return rec;
}

std::vector<CdfCurve> cdf_curves_for_points(
    const std::vector<BudgetPoint>& points,
    const std::vector<ExperimentRecord>& records, std::size_t n_draws) {
  std::vector<CdfCurve> curves;
  const std::pair<const char*, double ExperimentRecord::*> metrics[] = {
      {"nmi", &ExperimentRecord::nmi},
      {"max_xi", &ExperimentRecord::max_xi_released},
      {"max_abs_nu", &ExperimentRecord::max_abs_nu_released},
  };
  for (std::size_t p = 0; p < points.size(); ++p) {
    for (const auto& [name, field] : metrics) {
      std::vector<double> values;
      values.reserve(n_draws);
      for (std::size_t d = 0; d < n_draws; ++d) {
        values.push_back(records[d * points.size() + p].*field);
      }
      curves.push_back({name, points[p], empirical_cdf(values)});
    }
  }
  return curves;
}

AggregateResult aggregate_records(const SweepConfig& cfg,
                                  const std::vector<BudgetPoint>& points,
                                  std::vector<ExperimentRecord> records,
                                  bool with_cdfs) {
  const std::size_t n_draws = cfg.draw.n_draws;
  AggregateResult out;
  out.alphas = cfg.alphas;
  out.points.reserve(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    PointAggregate agg;
    agg.budget = points[p];
    double nmi_sum = 0.0;
    std::size_t lower = 0, upper = 0;
    for (std::size_t d = 0; d < n_draws; ++d) {
      const auto& rec = records[d * points.size() + p];
      nmi_sum += rec.nmi;
      if (rec.lower_attained) ++lower;
      if (rec.upper_attained) ++upper;
    }
    agg.mean_nmi = nmi_sum / static_cast<double>(n_draws);
    agg.lower_rate = static_cast<double>(lower) / static_cast<double>(n_draws);
    agg.upper_rate = static_cast<double>(upper) / static_cast<double>(n_draws);
    out.points.push_back(agg);
  }
  if (with_cdfs) {
    out.cdf_curves = cdf_curves_for_points(points, records, n_draws);
  }
  if (cfg.per_draw) out.per_draw = std::move(records);
  return out;
}

AggregateResult run_grid(const SweepConfig& cfg,
                         const std::vector<BudgetPoint>& points, int workers,
                         bool with_cdfs) {
  const EvalOptions opt{.release_metrics = with_cdfs || cfg.per_draw,
                        .measures = cfg.per_draw};
  const std::size_t n_draws = cfg.draw.n_draws;
  std::vector<ExperimentRecord> records(n_draws * points.size());
  parallel_for(n_draws, workers, [&](std::uint64_t d) {
    const auto j = sample_joint(cfg.draw, d);
    const auto profile = lift_profile(j);
    for (std::size_t p = 0; p < points.size(); ++p) {
      records[d * points.size() + p] =
          evaluate_point(j, profile, d, points[p], cfg.scheme, cfg.alphas, opt);
    }
  });
  return aggregate_records(cfg, points, std::move(records), with_cdfs);
}

}  // namespace

void SweepConfig::validate() const {
  draw.validate();
  for (double a : alphas) {
    if (std::isnan(a) || a < 1.0) {
      throw ConfigError("alphas must be >= 1 or inf");
    }
  }
  switch (mode) {
    case SweepMode::kEpsLSweep:
      check_grid(eps_u_list, "eps_u_list");
      check_grid(eps_l_grid, "eps_l_grid");
      break;
    case SweepMode::kLambdaSweep:
      check_grid(total_eps_list, "total_eps_list");
      check_grid(lambda_list, "lambda_list", /*unit_range=*/true);
      break;
    case SweepMode::kHistogram:
      if (n_bins < 2) throw ConfigError("n_bins must be >= 2");
      break;
  }
}

AggregateResult run_eps_l_sweep(const SweepConfig& cfg, int workers) {
  if (cfg.mode != SweepMode::kEpsLSweep) {
    throw ConfigError("config mode is not eps_l_sweep");
  }
  cfg.validate();
  std::vector<BudgetPoint> points;
  for (double eps_u : cfg.eps_u_list) {
    for (double eps_l : cfg.eps_l_grid) {
      points.push_back(make_point_from_budget(eps_u, eps_l));
    }
  }
  return run_grid(cfg, points, workers, /*with_cdfs=*/false);
}

AggregateResult run_lambda_sweep(const SweepConfig& cfg, int workers) {
  if (cfg.mode != SweepMode::kLambdaSweep) {
    throw ConfigError("config mode is not lambda_sweep");
  }
  cfg.validate();
  std::vector<BudgetPoint> points;
  for (double total : cfg.total_eps_list) {
    for (double lambda : cfg.lambda_list) {
      points.push_back(make_point_from_lambda(total, lambda));
    }
  }
  return run_grid(cfg, points, workers, /*with_cdfs=*/true);
}

HistogramSummary run_histogram(const SweepConfig& cfg, int workers) {
  if (cfg.mode != SweepMode::kHistogram) {
    throw ConfigError("config mode is not histogram");
  }
  cfg.validate();
  const std::size_t n_draws = cfg.draw.n_draws;
  const std::size_t nx = cfg.draw.n_symbols;
  std::vector<double> nus(n_draws * nx), xis(n_draws * nx);
  parallel_for(n_draws, workers, [&](std::uint64_t d) {
    const auto profile = lift_profile(sample_joint(cfg.draw, d));
    std::copy(profile.nu.begin(), profile.nu.end(), nus.begin() + d * nx);
    std::copy(profile.xi.begin(), profile.xi.end(), xis.begin() + d * nx);
  });
  return build_histogram(nus, xis, cfg.n_bins);
}

std::vector<std::pair<double, double>> empirical_cdf(
    std::span<const double> values) {
  if (values.empty()) throw EmptyInput("empirical_cdf of no values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  const double n = static_cast<double>(sorted.size());
  std::vector<std::pair<double, double>> steps;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const double v = sorted[i];
    std::size_t jx = i;
    while (jx < sorted.size() && sorted[jx] == v) ++jx;
    steps.emplace_back(v, static_cast<double>(jx) / n);
    i = jx;
  }
  // +inf values (if any) have already merged into a terminal (inf, 1.0) step.
  return steps;
}

void parallel_for(std::uint64_t n, int workers,
                  const std::function<void(std::uint64_t)>& fn) {
  unsigned int hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const std::uint64_t n_workers =
      std::min<std::uint64_t>(workers > 0 ? workers : hw, n);
  if (n_workers <= 1) {
    for (std::uint64_t i = 0; i < n; ++i) fn(i);
    return;
  }

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (std::uint64_t w = 0; w < n_workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace liftguard
