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

#include "liftguard/watchdog.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace liftguard {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PrivacyBudget PrivacyBudget::from_lambda(double total_eps, double lambda) {
  if (lambda < 0.0 || lambda > 1.0) {
    throw ConfigError("lambda must be in [0,1], got " + std::to_string(lambda));
  }
  PrivacyBudget b{lambda * total_eps, (1.0 - lambda) * total_eps};
  b.validate();
  return b;
}

void PrivacyBudget::validate() const {
  if (!(eps_l >= 0.0) || !(eps_u >= 0.0)) {
    throw ConfigError("budget must be nonnegative, got eps_l=" +
                      std::to_string(eps_l) + " eps_u=" + std::to_string(eps_u));
  }
}

RiskPartition partition(const LiftProfile& profile,
                        const PrivacyBudget& budget) {
  budget.validate();
  RiskPartition part;
  for (std::size_t x = 0; x < profile.n_symbols; ++x) {
    if (profile.nu[x] >= -budget.eps_l && profile.xi[x] <= budget.eps_u) {
      part.low_risk.push_back(x);
    } else {
      part.high_risk.push_back(x);
    }
  }
  return part;
}

Channel complete_merge_channel(const RiskPartition& partition,
                               std::size_t alphabet_size) {
  if (partition.low_risk.size() + partition.high_risk.size() != alphabet_size) {
    throw DimensionMismatch("partition does not cover the alphabet");
  }
  Channel ch;
  ch.n_inputs = alphabet_size;
  ch.n_outputs = alphabet_size;
  ch.probs.assign(alphabet_size * alphabet_size, 0.0);
  for (std::size_t x : partition.low_risk) {
    ch.probs[x * alphabet_size + x] = 1.0;
  }
  if (!partition.high_risk.empty()) {
    const std::size_t super = partition.high_risk.front();
    for (std::size_t x : partition.high_risk) {
      ch.probs[x * alphabet_size + super] = 1.0;
    }
  }
  return ch;
}

Channel uniform_channel(const RiskPartition& partition,
                        std::size_t alphabet_size) {
  if (partition.low_risk.size() + partition.high_risk.size() != alphabet_size) {
    throw DimensionMismatch("partition does not cover the alphabet");
  }
  if (partition.high_risk.empty()) {
    throw EmptyHighRiskSet("uniform randomization needs a non-empty set");
  }
  Channel ch;
  ch.n_inputs = alphabet_size;
  ch.n_outputs = alphabet_size;
  ch.probs.assign(alphabet_size * alphabet_size, 0.0);
  for (std::size_t x : partition.low_risk) {
    ch.probs[x * alphabet_size + x] = 1.0;
  }
  const double w = 1.0 / static_cast<double>(partition.high_risk.size());
  for (std::size_t x : partition.high_risk) {
    for (std::size_t y : partition.high_risk) {
      ch.probs[x * alphabet_size + y] = w;
    }
  }
  return ch;
}

ChannelApplication apply_channel(const JointDistribution& j,
                                 const Channel& ch) {
  if (ch.n_inputs != j.n_symbols()) {
    throw DimensionMismatch("channel expects " + std::to_string(ch.n_inputs) +
                            " inputs, joint has " +
                            std::to_string(j.n_symbols()) + " symbols");
  }
  const std::size_t ns = j.n_secrets();
  const std::size_t ny = ch.n_outputs;

  std::vector<double> out(ns * ny, 0.0);
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t x = 0; x < j.n_symbols(); ++x) {
      const double p = j.prob(s, x);
      if (p == 0.0) continue;
      for (std::size_t y = 0; y < ny; ++y) {
        const double w = ch.at(x, y);
        if (w != 0.0) out[s * ny + y] += p * w;
      }
    }
  }

  std::vector<double> mass(ny, 0.0);
  for (std::size_t y = 0; y < ny; ++y) {
    double acc = 0.0;
    for (std::size_t s = 0; s < ns; ++s) acc += out[s * ny + y];
    mass[y] = acc;
  }

  std::vector<std::size_t> kept_outputs;
  for (std::size_t y = 0; y < ny; ++y) {
    if (mass[y] > 0.0) kept_outputs.push_back(y);
  }
  const std::size_t nk = kept_outputs.size();
  std::vector<double> kept(ns * nk);
  std::vector<std::string> kept_labels;
  kept_labels.reserve(nk);
  for (std::size_t k = 0; k < nk; ++k) {
    const std::size_t y = kept_outputs[k];
    for (std::size_t s = 0; s < ns; ++s) kept[s * nk + k] = out[s * ny + y];
    kept_labels.push_back(j.symbol_labels()[y]);
  }

  // P_S is invariant along S - X - Y; inherit it so low-risk columns keep
  // bit-identical lifts.
  auto joint = JointDistribution::from_channel_image(
      std::move(kept), ns, nk, j.secret_marginal(), j.secret_labels(),
      std::move(kept_labels));
  auto p_y = joint.symbol_marginal();
  return ChannelApplication{std::move(joint), std::move(p_y),
                            std::move(kept_outputs)};
}

AchievedBounds achieved_bounds(const JointDistribution& j,
                               const RiskPartition& partition) {
  if (partition.high_risk.empty()) {
    throw EmptyHighRiskSet("achieved bounds are undefined on an empty set");
  }
  const auto& p_s = j.secret_marginal();
  const auto& p_x = j.symbol_marginal();

  double p_h = 0.0;
  for (std::size_t x : partition.high_risk) p_h += p_x[x];

  double max_r = -kInf;
  double min_r = kInf;
  for (std::size_t s = 0; s < j.n_secrets(); ++s) {
    double cond = 0.0;
    for (std::size_t x : partition.high_risk) cond += j.prob(s, x);
    cond /= p_s[s];  // P(X_H | s)
    const double r = std::log(cond / p_h);
    max_r = std::max(max_r, r);
    min_r = std::min(min_r, r);
  }
  return {max_r, std::abs(min_r)};
}

SanitizedRelease sanitize(const JointDistribution& j,
                          const PrivacyBudget& budget, Scheme scheme) {
  return sanitize(j, lift_profile(j), budget, scheme);
}

SanitizedRelease sanitize(const JointDistribution& j,
                          const LiftProfile& profile,
                          const PrivacyBudget& budget, Scheme scheme) {
  budget.validate();
  auto part = partition(profile, budget);

  const bool merged = !part.high_risk.empty();
  Channel ch = (merged && scheme == Scheme::kUniform)
                   ? uniform_channel(part, j.n_symbols())
                   : complete_merge_channel(part, j.n_symbols());

  auto app = apply_channel(j, ch);

  // With no high-risk symbols the release is the identity and the achieved
  // level is the raw profile's extremes.
  const AchievedBounds bounds =
      merged ? achieved_bounds(j, part)
             : AchievedBounds{profile.max_xi(), profile.max_abs_nu()};

  return SanitizedRelease{std::move(part),
                          std::move(ch),
                          std::move(app.joint),
                          std::move(app.p_y),
                          bounds.eps_u_star,
                          bounds.eps_l_star,
                          budget,
                          scheme,
                          std::move(app.kept_outputs)};
}

}  // namespace liftguard
