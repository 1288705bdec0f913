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

#include <cmath>

#include <doctest.h>

#include "oracles.hpp"

using namespace liftguard;

namespace {

SweepConfig lambda_config() {
  SweepConfig cfg;
  cfg.name = "t_lambda";
  cfg.mode = SweepMode::kLambdaSweep;
  cfg.draw = {8, 12, 60, 424242};
  cfg.total_eps_list = {1.5, 2.0};
  cfg.lambda_list = {0.5, 0.65};
  cfg.per_draw = true;
  return cfg;
}

}  // namespace

TEST_CASE("empirical cdf basics") {
  const std::vector<double> v{3, 1, 2};
  const auto cdf = empirical_cdf(v);
  REQUIRE(cdf.size() == 3);
  CHECK(cdf[0] == std::pair{1.0, 1.0 / 3});
  CHECK(cdf[1] == std::pair{2.0, 2.0 / 3});
  CHECK(cdf[2] == std::pair{3.0, 1.0});

  const std::vector<double> same{5, 5, 5, 5};
  const auto one = empirical_cdf(same);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == std::pair{5.0, 1.0});

  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<double> mixed{1.0, inf, 2.0, inf};
  const auto with_inf = empirical_cdf(mixed);
  REQUIRE(with_inf.size() == 3);
  CHECK(with_inf.back().first == inf);
  CHECK(with_inf.back().second == 1.0);

  CHECK_THROWS_AS(empirical_cdf(std::vector<double>{}), EmptyInput);
}

TEST_CASE("sweep config validation") {
  auto cfg = lambda_config();
  CHECK_NOTHROW(cfg.validate());

  auto bad = cfg;
  bad.lambda_list = {0.5, 0.2};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.lambda_list = {0.5, 1.2};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.total_eps_list.clear();
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.draw.n_draws = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.mode = SweepMode::kHistogram;
  bad.n_bins = 1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  SweepConfig eps;
  eps.mode = SweepMode::kEpsLSweep;
  eps.draw = {4, 5, 4, 1};
  eps.eps_u_list = {0.5};
  eps.eps_l_grid = {};
  CHECK_THROWS_AS(eps.validate(), ConfigError);
  CHECK_THROWS_AS(run_lambda_sweep(eps), ConfigError);  // mode mismatch
}

TEST_CASE("eps_l sweep: mean NMI is exactly nondecreasing along the grid") {
  SweepConfig cfg;
  cfg.name = "t_eps";
  cfg.mode = SweepMode::kEpsLSweep;
  cfg.draw = {8, 12, 80, 97};
  cfg.eps_u_list = {0.4, 0.6, 0.8};
  cfg.eps_l_grid = {0.2, 0.5, 0.8, 1.2, 1.8, 2.5, 3.5};

  const auto res = run_eps_l_sweep(cfg);
  REQUIRE(res.points.size() == cfg.eps_u_list.size() * cfg.eps_l_grid.size());
  const std::size_t n_l = cfg.eps_l_grid.size();
  for (std::size_t u = 0; u < cfg.eps_u_list.size(); ++u) {
    for (std::size_t l = 1; l < n_l; ++l) {
      const double prev = res.points[u * n_l + l - 1].mean_nmi;
      const double cur = res.points[u * n_l + l].mean_nmi;
      CHECK(cur >= prev);  // exact, no tolerance
    }
  }
  // and nondecreasing in eps_u at fixed eps_l
  for (std::size_t l = 0; l < n_l; ++l) {
    for (std::size_t u = 1; u < cfg.eps_u_list.size(); ++u) {
      CHECK(res.points[u * n_l + l].mean_nmi >=
            res.points[(u - 1) * n_l + l].mean_nmi);
    }
  }
}

TEST_CASE("lambda sweep aggregates, CDFs and pairing") {
  const auto cfg = lambda_config();
  const auto res = run_lambda_sweep(cfg);
  REQUIRE(res.points.size() == 4);
  REQUIRE(res.per_draw.size() == 4 * cfg.draw.n_draws);

  for (const auto& p : res.points) {
    CHECK(p.lower_rate >= 0.0);
    CHECK(p.lower_rate <= 1.0);
    CHECK(p.upper_rate >= 0.0);
    CHECK(p.upper_rate <= 1.0);
    CHECK(p.mean_nmi >= 0.0);
    CHECK(p.mean_nmi <= 1.0);
  }

  // CDF curves: nondecreasing fractions ending at exactly 1
  REQUIRE(res.cdf_curves.size() == 4 * 3);
  for (const auto& curve : res.cdf_curves) {
    REQUIRE(!curve.steps.empty());
    double prev = 0.0;
    for (const auto& [value, frac] : curve.steps) {
      CHECK(frac > prev);
      prev = frac;
    }
    CHECK(curve.steps.back().second == 1.0);
  }

  // paired draws: record (d, p) belongs to draw d for every point p
  for (std::size_t d = 0; d < cfg.draw.n_draws; ++d) {
    for (std::size_t p = 0; p < 4; ++p) {
      CHECK(res.per_draw[d * 4 + p].draw_id == d);
    }
  }
}

TEST_CASE("common random numbers across sweeps with the same seed") {
  auto cfg_a = lambda_config();
  cfg_a.total_eps_list = {1.5};
  cfg_a.lambda_list = {0.5};
  auto cfg_b = lambda_config();
  cfg_b.total_eps_list = {1.5, 2.0};
  cfg_b.lambda_list = {0.5, 0.65};

  const auto res_a = run_lambda_sweep(cfg_a);
  const auto res_b = run_lambda_sweep(cfg_b);
  // the shared grid point (1.5, 0.5) sees identical draws in both sweeps
  for (std::size_t d = 0; d < cfg_a.draw.n_draws; ++d) {
    CHECK(res_a.per_draw[d].nmi == res_b.per_draw[d * 4].nmi);
    CHECK(res_a.per_draw[d].eps_l_star == res_b.per_draw[d * 4].eps_l_star);
  }
}

TEST_CASE("results are identical for any worker count") {
  const auto cfg = lambda_config();
  const auto seq = run_lambda_sweep(cfg, 1);
  const auto par = run_lambda_sweep(cfg, 4);
  REQUIRE(seq.per_draw.size() == par.per_draw.size());
  for (std::size_t i = 0; i < seq.per_draw.size(); ++i) {
    CHECK(seq.per_draw[i].nmi == par.per_draw[i].nmi);
    CHECK(seq.per_draw[i].mi_sy == par.per_draw[i].mi_sy);
    CHECK(seq.per_draw[i].eps_u_star == par.per_draw[i].eps_u_star);
    CHECK(seq.per_draw[i].max_abs_nu_released ==
          par.per_draw[i].max_abs_nu_released);
  }
  for (std::size_t p = 0; p < seq.points.size(); ++p) {
    CHECK(seq.points[p].mean_nmi == par.points[p].mean_nmi);
    CHECK(seq.points[p].lower_rate == par.points[p].lower_rate);
  }
}

TEST_CASE("histogram mode produces a pooled pmf") {
  SweepConfig cfg;
  cfg.name = "t_hist";
  cfg.mode = SweepMode::kHistogram;
  cfg.draw = {6, 10, 30, 3};
  cfg.n_bins = 40;
  const auto h = run_histogram(cfg);
  double nu_total = 0.0, xi_total = 0.0;
  for (double v : h.nu_density) nu_total += v;
  for (double v : h.xi_density) xi_total += v;
  CHECK(nu_total == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(xi_total == doctest::Approx(1.0).epsilon(1e-9));

  auto bad = cfg;
  bad.n_bins = 0;
  CHECK_THROWS_AS(run_histogram(bad), ConfigError);
}

TEST_CASE("lambda boundaries are degenerate but well-defined") {
  SweepConfig cfg = lambda_config();
  cfg.lambda_list = {0.0, 1.0};
  cfg.total_eps_list = {1.0};
  cfg.draw.n_draws = 10;
  const auto res = run_lambda_sweep(cfg);
  // lambda=0 forbids any negative log-lift; lambda=1 any positive one.
  // Dense random joints have both on every symbol, so everything merges.
  for (const auto& p : res.points) {
    CHECK(p.mean_nmi == 0.0);
  }
}
