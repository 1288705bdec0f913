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

#include "liftguard/lift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace liftguard {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double LiftProfile::max_xi() const {
  double m = -kInf;
  for (double v : xi) m = std::max(m, v);
  return m;
}

double LiftProfile::max_abs_nu() const {
  double m = 0.0;
  for (double v : nu) m = std::max(m, -v);
  return m;
}

LiftProfile lift_profile(const JointDistribution& j) {
  const std::size_t ns = j.n_secrets();
  const std::size_t nx = j.n_symbols();
  const auto& p_s = j.secret_marginal();
  const auto& p_x = j.symbol_marginal();

  LiftProfile prof;
  prof.n_secrets = ns;
  prof.n_symbols = nx;
  prof.log_lift.resize(ns * nx);
  prof.nu.assign(nx, kInf);
  prof.xi.assign(nx, -kInf);

  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t x = 0; x < nx; ++x) {
      const double p = j.prob(s, x);
      // ln(0) = -inf marks a zero cell; both marginals are positive by the
      // admission invariant, so the ratio is never 0/0.
      const double v = std::log(p / (p_s[s] * p_x[x]));
      prof.log_lift[s * nx + x] = v;
      prof.nu[x] = std::min(prof.nu[x], v);
      prof.xi[x] = std::max(prof.xi[x], v);
    }
  }
  return prof;
}

HistogramSummary build_histogram(std::span<const double> nu_values,
                                 std::span<const double> xi_values,
                                 int n_bins) {
  if (n_bins < 2) throw ConfigError("n_bins must be >= 2");
  if (nu_values.empty() || xi_values.empty()) {
    throw EmptyInput("no values to pool");
  }

  double lo = kInf, hi = -kInf;
  double nu_lo = kInf, nu_hi = -kInf, xi_lo = kInf, xi_hi = -kInf;
  for (double v : nu_values) {
    if (std::isinf(v)) continue;
    nu_lo = std::min(nu_lo, v);
    nu_hi = std::max(nu_hi, v);
  }
  for (double v : xi_values) {
    xi_lo = std::min(xi_lo, v);
    xi_hi = std::max(xi_hi, v);
  }
  lo = std::min(nu_lo, xi_lo);
  hi = std::max(nu_hi, xi_hi);
  if (!std::isfinite(lo)) {
    // All nu values were -inf; span the xi support alone.
    lo = xi_lo;
    hi = xi_hi;
  }
  if (hi - lo < 1e-12) {
    // Degenerate pooled support up to rounding (e.g. a product distribution
    // where every extreme is 0): widen to unit range, placing the values at
    // the center of one bin rather than on an edge.
    const double mid = 0.5 * (lo + hi);
    const double w = 1.0 / n_bins;
    lo = mid - (static_cast<double>(n_bins / 2) + 0.5) * w;
    hi = lo + 1.0;
  }

  HistogramSummary h;
  h.support_nu = {nu_lo, nu_hi};
  h.support_xi = {xi_lo, xi_hi};
  h.bin_edges.resize(static_cast<std::size_t>(n_bins) + 1);
  const double width = (hi - lo) / n_bins;
  for (int b = 0; b <= n_bins; ++b) h.bin_edges[b] = lo + width * b;
  h.bin_edges.back() = hi;

  auto bin_of = [&](double v) -> std::size_t {
    // Index 0 is the underflow bin; finite values land in 1..n_bins.
    if (std::isinf(v)) return 0;
    auto b = static_cast<long>((v - lo) / width);
    b = std::clamp(b, 0L, static_cast<long>(n_bins) - 1);
    return static_cast<std::size_t>(b) + 1;
  };

  h.nu_density.assign(static_cast<std::size_t>(n_bins) + 1, 0.0);
  h.xi_density.assign(static_cast<std::size_t>(n_bins) + 1, 0.0);
  for (double v : nu_values) h.nu_density[bin_of(v)] += 1.0;
  for (double v : xi_values) h.xi_density[bin_of(v)] += 1.0;
  for (double& d : h.nu_density) d /= static_cast<double>(nu_values.size());
  for (double& d : h.xi_density) d /= static_cast<double>(xi_values.size());
  return h;
}

HistogramSummary lift_histograms(std::span<const LiftProfile> profiles,
                                 int n_bins) {
  if (profiles.empty()) throw EmptyInput("no profiles");
  std::vector<double> nus, xis;
  for (const auto& p : profiles) {
    nus.insert(nus.end(), p.nu.begin(), p.nu.end());
    xis.insert(xis.end(), p.xi.begin(), p.xi.end());
  }
  return build_histogram(nus, xis, n_bins);
}

}  // namespace liftguard
