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

#include "liftguard/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace liftguard {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlack = 1e-9;

std::string alpha_tag(double alpha) {
  if (std::isinf(alpha)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", alpha);
  return buf;
}

// P_S-weighted alpha-norm of one lift column, computed with the maximum
// factored out so large alpha never overflows.
double weighted_alpha_norm(std::span<const double> lifts,
                           std::span<const double> weights, double alpha) {
  double m = 0.0;
  for (double v : lifts) m = std::max(m, v);
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    if (lifts[i] > 0.0) {
      acc += weights[i] * std::exp(alpha * std::log(lifts[i] / m));
    }
  }
  return m * std::exp(std::log(acc) / alpha);
}

// Unweighted alpha-norm with max factoring.
double alpha_norm(std::span<const double> v, double alpha) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (double x : v) {
    if (x > 0.0) acc += std::exp(alpha * std::log(x / m));
  }
  return m * std::exp(std::log(acc) / alpha);
}

}  // namespace

const std::vector<double>& default_alphas() {
  static const std::vector<double> grid{1.0, 1.5, 2.0, 5.0, 10.0, kAlphaInf};
  return grid;
}

double mutual_information(const JointDistribution& joint) {
  const auto& p_s = joint.secret_marginal();
  const auto& p_y = joint.symbol_marginal();
  double mi = 0.0;
  for (std::size_t s = 0; s < joint.n_secrets(); ++s) {
    for (std::size_t y = 0; y < joint.n_symbols(); ++y) {
      const double p = joint.prob(s, y);
      if (p > 0.0) mi += p * std::log(p / (p_s[s] * p_y[y]));
    }
  }
  return mi;
}

WatchdogUtility watchdog_utility(const JointDistribution& j,
                                 const RiskPartition& partition) {
  const auto& p_x = j.symbol_marginal();
  const double h_x = entropy_symbols(j);

  // Exact boundary cases: a total merge carries no information about X and
  // an identity release carries all of it. Returning literal 0/1 here keeps
  // per-draw comparisons across budgets free of rounding residue.
  if (partition.high_risk.empty()) return {h_x, 1.0};
  if (partition.low_risk.empty()) return {0.0, 0.0};

  double p_h = 0.0;
  for (std::size_t x : partition.high_risk) p_h += p_x[x];
  double acc = 0.0;
  for (std::size_t x : partition.high_risk) {
    acc += p_x[x] * std::log(p_x[x] / p_h);
  }
  const double mi = std::max(h_x + acc, 0.0);
  return {mi, std::min(mi / h_x, 1.0)};
}

std::vector<double> alpha_lift(const JointDistribution& joint, double alpha) {
  if (std::isnan(alpha) || alpha <= 1.0) {
    throw InvalidAlpha("alpha must be > 1 (or the inf sentinel), got " +
                       std::to_string(alpha));
  }
  const auto& p_s = joint.secret_marginal();
  const auto& p_y = joint.symbol_marginal();
  const std::size_t ns = joint.n_secrets();
  const std::size_t ny = joint.n_symbols();

  std::vector<double> out(ny);
  std::vector<double> lifts(ns);
  for (std::size_t y = 0; y < ny; ++y) {
    for (std::size_t s = 0; s < ns; ++s) {
      lifts[s] = joint.prob(s, y) / (p_s[s] * p_y[y]);
    }
    if (std::isinf(alpha)) {
      out[y] = *std::max_element(lifts.begin(), lifts.end());
    } else {
      out[y] = weighted_alpha_norm(lifts, p_s, alpha);
    }
  }
  return out;
}

double maximal_leakage(const JointDistribution& joint) {
  const auto& p_s = joint.secret_marginal();
  double acc = 0.0;
  for (std::size_t y = 0; y < joint.n_symbols(); ++y) {
    double m = 0.0;
    for (std::size_t s = 0; s < joint.n_secrets(); ++s) {
      m = std::max(m, joint.prob(s, y) / p_s[s]);  // P_{Y|S}(y|s)
    }
    acc += m;
  }
  return std::log(acc);
}

double sibson_mi(const JointDistribution& joint, double alpha) {
  if (std::isnan(alpha) || alpha < 1.0) {
    throw InvalidAlpha("alpha must be >= 1, got " + std::to_string(alpha));
  }
  if (alpha == 1.0) return mutual_information(joint);
  if (std::isinf(alpha)) return maximal_leakage(joint);

  const auto& p_y = joint.symbol_marginal();
  const auto lifts = alpha_lift(joint, alpha);
  double expect = 0.0;
  for (std::size_t y = 0; y < joint.n_symbols(); ++y) {
    expect += p_y[y] * lifts[y];
  }
  return alpha / (alpha - 1.0) * std::log(expect);
}

double arimoto_mi(const JointDistribution& joint, double alpha) {
  if (std::isnan(alpha) || alpha < 1.0) {
    throw InvalidAlpha("alpha must be >= 1, got " + std::to_string(alpha));
  }
  if (alpha == 1.0) return mutual_information(joint);

  const auto& p_s = joint.secret_marginal();
  const auto& p_y = joint.symbol_marginal();
  const std::size_t ns = joint.n_secrets();
  const std::size_t ny = joint.n_symbols();

  if (std::isinf(alpha)) {
    double acc = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
      double m = 0.0;
      for (std::size_t s = 0; s < ns; ++s) m = std::max(m, joint.prob(s, y));
      acc += m;
    }
    const double max_prior = *std::max_element(p_s.begin(), p_s.end());
    return std::log(acc / max_prior);
  }

  std::vector<double> posterior(ns);
  double expect = 0.0;
  for (std::size_t y = 0; y < ny; ++y) {
    for (std::size_t s = 0; s < ns; ++s) {
      posterior[s] = joint.prob(s, y) / p_y[y];
    }
    expect += p_y[y] * alpha_norm(posterior, alpha);
  }
  return alpha / (alpha - 1.0) * std::log(expect / alpha_norm(p_s, alpha));
}

double ldp_factor(const JointDistribution& joint) {
  const auto& p_s = joint.secret_marginal();
  double sup = 0.0;
  for (std::size_t y = 0; y < joint.n_symbols(); ++y) {
    double hi = 0.0;
    double lo = kInf;
    for (std::size_t s = 0; s < joint.n_secrets(); ++s) {
      const double cond = joint.prob(s, y) / p_s[s];
      hi = std::max(hi, cond);
      lo = std::min(lo, cond);
    }
    if (lo == 0.0) {
      if (hi > 0.0) return kInf;
      continue;  // unreachable: columns have positive mass
    }
    sup = std::max(sup, std::log(hi / lo));
  }
  return sup;
}

LeakageReport leakage_report(const JointDistribution& joint,
                             std::span<const double> alphas,
                             double nmi_utility) {
  LeakageReport rep;
  rep.mi_sy = mutual_information(joint);
  rep.max_leakage = maximal_leakage(joint);
  rep.ldp = ldp_factor(joint);
  rep.nmi_utility = nmi_utility;
  for (double a : alphas) {
    rep.sibson[a] = sibson_mi(joint, a);
    rep.arimoto[a] = arimoto_mi(joint, a);
    if (a > 1.0) rep.alpha_lifts[a] = alpha_lift(joint, a);
  }
  return rep;
}

std::vector<BoundCheck> verify_bounds(const LeakageReport& report,
                                      double eps_l_star, double eps_u_star,
                                      std::span<const double> alphas) {
  std::vector<BoundCheck> checks;
  auto add = [&checks](std::string name, double lhs, double rhs) {
    checks.push_back({std::move(name), lhs, rhs, lhs <= rhs + kSlack});
  };

  add("mi<=eps_u*", report.mi_sy, eps_u_star);
  add("max_leakage<=eps_u*", report.max_leakage, eps_u_star);

  for (double a : alphas) {
    const std::string tag = alpha_tag(a);
    if (a > 1.0) {
      if (auto it = report.alpha_lifts.find(a); it != report.alpha_lifts.end()) {
        double max_log_lift = -kInf;
        for (double v : it->second) max_log_lift = std::max(max_log_lift, std::log(v));
        add("max_ln_alpha_lift(a=" + tag + ")<=eps_u*", max_log_lift, eps_u_star);
      }
    }
    // alpha/(alpha-1) -> 1 at inf; at alpha=1 both MIs reduce to Shannon MI,
    // bounded by eps_u* directly.
    const double factor = std::isinf(a) ? 1.0 : (a == 1.0 ? 1.0 : a / (a - 1.0));
    if (auto it = report.sibson.find(a); it != report.sibson.end()) {
      add("sibson(a=" + tag + ")<=a/(a-1)*eps_u*", it->second,
          factor * eps_u_star);
    }
    if (auto it = report.arimoto.find(a); it != report.arimoto.end()) {
      add("arimoto(a=" + tag + ")<=a/(a-1)*eps_u*", it->second,
          factor * eps_u_star);
    }
  }

  add("ldp<=eps_l*+eps_u*", report.ldp, eps_l_star + eps_u_star);
  return checks;
}

}  // namespace liftguard
