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

#ifndef LIFTGUARD_DISTRIBUTIONS_HPP_
#define LIFTGUARD_DISTRIBUTIONS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "liftguard/errors.hpp"

namespace liftguard {

// Discrete joint pmf over secrets x symbols (rows = secrets, row-major).
// Immutable after construction; marginals are computed once and cached.
// Admission invariants: entries >= 0, total mass 1 (renormalized only when
// the deviation is <= 1e-9), and strictly positive row and column marginals.
// Joint cells may be exactly zero.
class JointDistribution {
 public:
  // Validates a rectangular matrix given as rows. Throws NegativeEntry,
  // SumNotOne, ZeroMarginal or DimensionMismatch.
  static JointDistribution validate(const std::vector<std::vector<double>>& rows,
                                    std::vector<std::string> secret_labels,
                                    std::vector<std::string> symbol_labels);

  // Same, from a flat row-major buffer.
  static JointDistribution validate(std::vector<double> probs,
                                    std::size_t n_secrets, std::size_t n_symbols,
                                    std::vector<std::string> secret_labels,
                                    std::vector<std::string> symbol_labels);

  // Convenience: validates with default labels s1..sN / x1..xM.
  static JointDistribution validate(const std::vector<std::vector<double>>& rows);

  // Builds without renormalizing, inheriting a known-exact secret marginal.
  // Used by channel application, where P_S is invariant along the Markov
  // chain S - X - Y; recomputing it would perturb low-risk lifts by
  // rounding. The caller vouches for p_s; column marginals are still
  // checked.
  static JointDistribution from_channel_image(std::vector<double> probs,
                                              std::size_t n_secrets,
                                              std::size_t n_symbols,
                                              std::vector<double> p_s,
                                              std::vector<std::string> secret_labels,
                                              std::vector<std::string> symbol_labels);

  std::size_t n_secrets() const { return n_secrets_; }
  std::size_t n_symbols() const { return n_symbols_; }
  double prob(std::size_t s, std::size_t x) const {
    return probs_[s * n_symbols_ + x];
  }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<double>& secret_marginal() const { return p_s_; }
  const std::vector<double>& symbol_marginal() const { return p_x_; }
  const std::vector<std::string>& secret_labels() const { return secret_labels_; }
  const std::vector<std::string>& symbol_labels() const { return symbol_labels_; }

 private:
  JointDistribution() = default;

  std::size_t n_secrets_ = 0;
  std::size_t n_symbols_ = 0;
  std::vector<double> probs_;  // row-major
  std::vector<double> p_s_;
  std::vector<double> p_x_;
  std::vector<std::string> secret_labels_;
  std::vector<std::string> symbol_labels_;
};

// Shape and seeding of a batch of random joints.
struct RandomDrawConfig {
  std::size_t n_secrets = 0;
  std::size_t n_symbols = 0;
  std::size_t n_draws = 0;
  std::uint64_t seed = 0;

  // Throws ConfigError unless n_secrets >= 2, n_symbols >= 2, n_draws >= 1.
  void validate() const;
};

// P_S(s) = sum_x probs(s, x).
const std::vector<double>& marginal_secrets(const JointDistribution& j);

// P_X(x) = sum_s probs(s, x).
const std::vector<double>& marginal_symbols(const JointDistribution& j);

// P_{S|X}(.|x); throws IndexOutOfRange.
std::vector<double> posterior_secrets_given_symbol(const JointDistribution& j,
                                                   std::size_t x);

// Draws one random joint: entries i.i.d. Uniform(0,1) normalized by the
// total. Pure function of (cfg.seed, draw_index): bit-identical across runs
// and parallel schedules. Resamples (up to 100 attempts) if any marginal
// falls below 1e-9; throws DegenerateDraw when the budget is exhausted.
JointDistribution sample_joint(const RandomDrawConfig& cfg,
                               std::size_t draw_index);

// H(X) in nats.
double entropy_symbols(const JointDistribution& j);

// Shannon entropy of a probability vector, 0 ln 0 = 0.
double entropy(const std::vector<double>& p);

}  // namespace liftguard

#endif  // LIFTGUARD_DISTRIBUTIONS_HPP_
