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

#ifndef LIFTGUARD_WATCHDOG_HPP_
#define LIFTGUARD_WATCHDOG_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "liftguard/distributions.hpp"
#include "liftguard/lift.hpp"

namespace liftguard {

// Asymmetric privacy budget in nats: log-lift confined to [-eps_l, eps_u].
struct PrivacyBudget {
  double eps_l = 0.0;
  double eps_u = 0.0;

  double total() const { return eps_l + eps_u; }
  // eps_l = lambda * total, eps_u = (1 - lambda) * total.
  static PrivacyBudget from_lambda(double total_eps, double lambda);
  // Throws ConfigError unless both budgets are nonnegative.
  void validate() const;
};

// Bi-partition of the symbol alphabet; both lists keep alphabet order.
struct RiskPartition {
  std::vector<std::size_t> low_risk;
  std::vector<std::size_t> high_risk;
};

// Row-stochastic P_{Y|X} over the input alphabet: identity block on the
// low-risk set, zero cross blocks, stochastic block on the high-risk set.
struct Channel {
  std::size_t n_inputs = 0;
  std::size_t n_outputs = 0;
  std::vector<double> probs;  // row-major

  double at(std::size_t x, std::size_t y) const {
    return probs[x * n_outputs + y];
  }
};

enum class Scheme { kCompleteMerge, kUniform };

// x is low-risk iff -eps_l <= i(s,x) <= eps_u for all s (inclusive), i.e.
// nu(x) >= -eps_l and xi(x) <= eps_u.
RiskPartition partition(const LiftProfile& profile, const PrivacyBudget& budget);

// Identity on the low-risk set; every high-risk x maps with probability 1 to
// the smallest-index high-risk symbol. Identity channel when the high-risk
// set is empty.
Channel complete_merge_channel(const RiskPartition& partition,
                               std::size_t alphabet_size);

// Identity on the low-risk set; every high-risk row is the constant vector
// 1/|X_H| over the high-risk set. Throws EmptyHighRiskSet.
Channel uniform_channel(const RiskPartition& partition,
                        std::size_t alphabet_size);

// Result of pushing a joint through a channel. Output columns with zero mass
// (merged-away symbols) are dropped from the released alphabet;
// kept_outputs maps released columns back to input symbol indices.
struct ChannelApplication {
  JointDistribution joint;           // P_{S,Y}
  std::vector<double> p_y;           // column marginal of joint
  std::vector<std::size_t> kept_outputs;
};

// P_{S,Y}(s,y) = sum_x P_{S,X}(s,x) P_{Y|X}(y|x). Throws DimensionMismatch.
ChannelApplication apply_channel(const JointDistribution& j, const Channel& ch);

// Post-randomization extremes of the merged set (any X-invariant channel
// attains these): eps_u_star = max_s ln(P(X_H|s)/P(X_H)) and
// eps_l_star = |min_s ln(P(X_H|s)/P(X_H))|; eps_l_star is +inf when some
// secret has no mass on the high-risk set. Throws EmptyHighRiskSet.
struct AchievedBounds {
  double eps_u_star = 0.0;
  double eps_l_star = 0.0;
};

AchievedBounds achieved_bounds(const JointDistribution& j,
                               const RiskPartition& partition);

// Full sanitization product: partition, channel, induced P_{S,Y} and the
// achieved merged-set bounds. With an empty high-risk set the channel is the
// identity and the achieved bounds are the raw profile extremes over the
// released alphabet.
struct SanitizedRelease {
  RiskPartition partition;
  Channel channel;
  JointDistribution joint_sy;
  std::vector<double> p_y;
  double achieved_eps_u_star = 0.0;
  double achieved_eps_l_star = 0.0;
  PrivacyBudget budget;
  Scheme scheme = Scheme::kCompleteMerge;
  std::vector<std::size_t> released_symbols;  // original indices of columns

  bool lower_attained() const {
    return achieved_eps_l_star <= budget.eps_l + 1e-9;
  }
  bool upper_attained() const {
    return achieved_eps_u_star <= budget.eps_u + 1e-9;
  }
};

SanitizedRelease sanitize(const JointDistribution& j,
                          const PrivacyBudget& budget, Scheme scheme);

// Overload reusing a precomputed profile (the sweep harness keeps one
// profile per draw across all grid points).
SanitizedRelease sanitize(const JointDistribution& j, const LiftProfile& profile,
                          const PrivacyBudget& budget, Scheme scheme);

}  // namespace liftguard

#endif  // LIFTGUARD_WATCHDOG_HPP_
