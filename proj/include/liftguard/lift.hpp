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

#ifndef LIFTGUARD_LIFT_HPP_
#define LIFTGUARD_LIFT_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "liftguard/distributions.hpp"

namespace liftguard {

// Log-lift matrix i(s,x) = ln(P_{S|X}(s|x) / P_S(s)) with its per-symbol
// extremes. -inf entries mark zero joint cells and are kept as-is; clamping
// them would silently change partition decisions downstream.
struct LiftProfile {
  std::size_t n_secrets = 0;
  std::size_t n_symbols = 0;
  std::vector<double> log_lift;  // row-major, -inf allowed
  std::vector<double> nu;        // min over secrets, per symbol
  std::vector<double> xi;        // max over secrets, per symbol

  double at(std::size_t s, std::size_t x) const {
    return log_lift[s * n_symbols + x];
  }
  // max_x xi(x); always finite.
  double max_xi() const;
  // max_x |nu(x)|; +inf when some column has a zero cell.
  double max_abs_nu() const;
};

LiftProfile lift_profile(const JointDistribution& j);

// Pooled empirical pmf-over-bins of nu and xi values. Bin edges are shared
// between the two histograms and span the pooled finite support; densities
// have n_bins + 1 entries with index 0 acting as the underflow bin that
// collects -inf values. Each density sums to 1 over all bins.
struct HistogramSummary {
  std::vector<double> bin_edges;    // n_bins + 1 edges
  std::vector<double> nu_density;   // n_bins + 1, [0] = underflow
  std::vector<double> xi_density;   // n_bins + 1, [0] = underflow (always 0)
  std::pair<double, double> support_nu;  // finite min/max
  std::pair<double, double> support_xi;
};

// Pools nu/xi across profiles. Throws EmptyInput when no profiles are given,
// ConfigError when n_bins < 2.
HistogramSummary lift_histograms(std::span<const LiftProfile> profiles,
                                 int n_bins);

// Low-level builder over already pooled values (used by the sweep harness to
// avoid materializing every profile).
HistogramSummary build_histogram(std::span<const double> nu_values,
                                 std::span<const double> xi_values,
                                 int n_bins);

}  // namespace liftguard

#endif  // LIFTGUARD_LIFT_HPP_
