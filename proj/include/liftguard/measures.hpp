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

#ifndef LIFTGUARD_MEASURES_HPP_
#define LIFTGUARD_MEASURES_HPP_

#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "liftguard/distributions.hpp"
#include "liftguard/watchdog.hpp"

namespace liftguard {

inline constexpr double kAlphaInf = std::numeric_limits<double>::infinity();

// Default alpha grid: Shannon sentinel, the finite regimes, and the max-lift
// sentinel.
const std::vector<double>& default_alphas();

// Shannon mutual information between the row and column variables, nats.
double mutual_information(const JointDistribution& joint);

// Utility of a watchdog release under any X-invariant randomization:
// mi_xy = H(X) + sum_{x in X_H} P_X(x) ln(P_X(x) / P(X_H)), nmi = mi_xy/H(X).
// Exact 0 when the high-risk set is the whole alphabet, exact 1 via nmi when
// it is empty (total merge / identity release have no rounding residue, so
// paired comparisons across budgets stay meaningful).
struct WatchdogUtility {
  double mi_xy = 0.0;
  double nmi = 0.0;
};

WatchdogUtility watchdog_utility(const JointDistribution& j,
                                 const RiskPartition& partition);

// Per-symbol alpha-lift (P_S-weighted alpha-norm of the lift column);
// max_s lift at alpha = inf. Requires alpha > 1; throws InvalidAlpha.
std::vector<double> alpha_lift(const JointDistribution& joint, double alpha);

// Sibson mutual information of order alpha in (1, inf), with sentinels:
// Shannon MI at alpha = 1 and ln E_Y[max_s lift] at alpha = inf.
// Throws InvalidAlpha for alpha < 1.
double sibson_mi(const JointDistribution& joint, double alpha);

// Arimoto mutual information of order alpha, same sentinel convention.
double arimoto_mi(const JointDistribution& joint, double alpha);

// ln sum_y max_s P_{Y|S}(y|s); equals sibson_mi at alpha = inf.
double maximal_leakage(const JointDistribution& joint);

// Worst-case log ratio of output likelihoods over secret pairs; +inf when
// some output has both zero and nonzero conditional probability.
double ldp_factor(const JointDistribution& joint);

// Full measure panel for one release.
struct LeakageReport {
  double mi_sy = 0.0;
  double max_leakage = 0.0;
  std::map<double, std::vector<double>> alpha_lifts;  // alpha -> per-symbol
  std::map<double, double> sibson;                    // alpha -> nats
  std::map<double, double> arimoto;
  double ldp = 0.0;
  double nmi_utility = 0.0;
};

LeakageReport leakage_report(const JointDistribution& joint,
                             std::span<const double> alphas,
                             double nmi_utility);

// One verified inequality: lhs <= rhs + 1e-9.
struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

// Checks every bound implied by (eps_l_star, eps_u_star)-ALIP against the
// report: mi <= eps_u*, max-leakage <= eps_u*, max_y ln alpha_lift <= eps_u*,
// Sibson/Arimoto <= alpha/(alpha-1) eps_u* (the factor is 1 at alpha = inf
// and the bound degrades to the plain eps_u* MI bound at alpha = 1), and
// ldp <= eps_l* + eps_u*. Violations are reported, never thrown.
std::vector<BoundCheck> verify_bounds(const LeakageReport& report,
                                      double eps_l_star, double eps_u_star,
                                      std::span<const double> alphas);

}  // namespace liftguard

#endif  // LIFTGUARD_MEASURES_HPP_
