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

#include "liftguard/distributions.hpp"

#include <cmath>
#include <unordered_set>

#include "liftguard/random.hpp"

namespace liftguard {

namespace {

constexpr double kSumTolerance = 1e-9;
constexpr double kMinSampledMarginal = 1e-9;
constexpr int kMaxResampleAttempts = 100;

std::vector<std::string> default_labels(const char* prefix, std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(prefix + std::to_string(i + 1));
  }
  return labels;
}

void check_labels(const std::vector<std::string>& labels, std::size_t expected,
                  const char* which) {
  if (labels.size() != expected) {
    throw DimensionMismatch(std::string(which) + " labels: got " +
                            std::to_string(labels.size()) + ", expected " +
                            std::to_string(expected));
  }
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw DimensionMismatch(std::string("duplicate ") + which + " label '" +
                              l + "'");
    }
  }
}

std::vector<double> row_sums(const std::vector<double>& probs,
                             std::size_t n_rows, std::size_t n_cols) {
  std::vector<double> out(n_rows, 0.0);
  for (std::size_t s = 0; s < n_rows; ++s) {
    double acc = 0.0;
    for (std::size_t x = 0; x < n_cols; ++x) acc += probs[s * n_cols + x];
    out[s] = acc;
  }
  return out;
}

std::vector<double> col_sums(const std::vector<double>& probs,
                             std::size_t n_rows, std::size_t n_cols) {
  std::vector<double> out(n_cols, 0.0);
  for (std::size_t x = 0; x < n_cols; ++x) {
    double acc = 0.0;
    for (std::size_t s = 0; s < n_rows; ++s) acc += probs[s * n_cols + x];
    out[x] = acc;
  }
  return out;
}

}  // namespace

JointDistribution JointDistribution::validate(
    std::vector<double> probs, std::size_t n_secrets, std::size_t n_symbols,
    std::vector<std::string> secret_labels,
    std::vector<std::string> symbol_labels) {
  if (n_secrets == 0 || n_symbols == 0 ||
      probs.size() != n_secrets * n_symbols) {
    throw DimensionMismatch("matrix must be non-empty with " +
                            std::to_string(n_secrets) + "x" +
                            std::to_string(n_symbols) + " entries");
  }
  check_labels(secret_labels, n_secrets, "secret");
  check_labels(symbol_labels, n_symbols, "symbol");

  double total = 0.0;
  for (double p : probs) {
    if (p < 0.0 || std::isnan(p)) {
      throw NegativeEntry("joint entries must be nonnegative, got " +
                          std::to_string(p));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw SumNotOne("joint mass sums to " + std::to_string(total));
  }
  for (double& p : probs) p /= total;

  JointDistribution j;
  j.n_secrets_ = n_secrets;
  j.n_symbols_ = n_symbols;
  j.p_s_ = row_sums(probs, n_secrets, n_symbols);
  j.p_x_ = col_sums(probs, n_secrets, n_symbols);
  j.probs_ = std::move(probs);
  j.secret_labels_ = std::move(secret_labels);
  j.symbol_labels_ = std::move(symbol_labels);

  for (std::size_t s = 0; s < n_secrets; ++s) {
    if (!(j.p_s_[s] > 0.0)) {
      throw ZeroMarginal("secret '" + j.secret_labels_[s] + "' has zero mass");
    }
  }
  for (std::size_t x = 0; x < n_symbols; ++x) {
    if (!(j.p_x_[x] > 0.0)) {
      throw ZeroMarginal("symbol '" + j.symbol_labels_[x] + "' has zero mass");
    }
  }
  return j;
}

JointDistribution JointDistribution::validate(
    const std::vector<std::vector<double>>& rows,
    std::vector<std::string> secret_labels,
    std::vector<std::string> symbol_labels) {
  if (rows.empty() || rows.front().empty()) {
    throw DimensionMismatch("matrix must be non-empty");
  }
  const std::size_t n_cols = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * n_cols);
  for (const auto& row : rows) {
    if (row.size() != n_cols) {
      throw DimensionMismatch("matrix rows have unequal lengths");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return validate(std::move(flat), rows.size(), n_cols,
                  std::move(secret_labels), std::move(symbol_labels));
}

JointDistribution JointDistribution::validate(
    const std::vector<std::vector<double>>& rows) {
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = rows.empty() ? 0 : rows.front().size();
  return validate(rows, default_labels("s", n_rows), default_labels("x", n_cols));
}

JointDistribution JointDistribution::from_channel_image(
    std::vector<double> probs, std::size_t n_secrets, std::size_t n_symbols,
    std::vector<double> p_s, std::vector<std::string> secret_labels,
    std::vector<std::string> symbol_labels) {
  JointDistribution j;
  j.n_secrets_ = n_secrets;
  j.n_symbols_ = n_symbols;
  j.p_x_ = col_sums(probs, n_secrets, n_symbols);
  j.p_s_ = std::move(p_s);
  j.probs_ = std::move(probs);
  j.secret_labels_ = std::move(secret_labels);
  j.symbol_labels_ = std::move(symbol_labels);
  for (double m : j.p_x_) {
    if (!(m > 0.0)) throw ZeroMarginal("released symbol has zero mass");
  }
  return j;
}

void RandomDrawConfig::validate() const {
  if (n_secrets < 2) throw ConfigError("n_secrets must be >= 2");
  if (n_symbols < 2) throw ConfigError("n_symbols must be >= 2");
  if (n_draws < 1) throw ConfigError("n_draws must be >= 1");
}

const std::vector<double>& marginal_secrets(const JointDistribution& j) {
  return j.secret_marginal();
}

const std::vector<double>& marginal_symbols(const JointDistribution& j) {
  return j.symbol_marginal();
}

std::vector<double> posterior_secrets_given_symbol(const JointDistribution& j,
                                                   std::size_t x) {
  if (x >= j.n_symbols()) {
    throw IndexOutOfRange("symbol index " + std::to_string(x) + " >= " +
                          std::to_string(j.n_symbols()));
  }
  const double p_x = j.symbol_marginal()[x];
  std::vector<double> post(j.n_secrets());
  for (std::size_t s = 0; s < j.n_secrets(); ++s) {
    post[s] = j.prob(s, x) / p_x;
  }
  return post;
}

JointDistribution sample_joint(const RandomDrawConfig& cfg,
                               std::size_t draw_index) {
  cfg.validate();
  if (draw_index >= cfg.n_draws) {
    throw IndexOutOfRange("draw_index " + std::to_string(draw_index) +
                          " >= n_draws " + std::to_string(cfg.n_draws));
  }
  const std::size_t n = cfg.n_secrets * cfg.n_symbols;
  for (int attempt = 0; attempt < kMaxResampleAttempts; ++attempt) {
    Rng rng(cfg.seed, draw_index, static_cast<std::uint64_t>(attempt));
    std::vector<double> cells(n);
    double total = 0.0;
    for (double& c : cells) {
      c = rng.next_unit();
      total += c;
    }
    for (double& c : cells) c /= total;

    bool ok = true;
    for (std::size_t s = 0; s < cfg.n_secrets && ok; ++s) {
      double acc = 0.0;
      for (std::size_t x = 0; x < cfg.n_symbols; ++x)
        acc += cells[s * cfg.n_symbols + x];
      ok = acc >= kMinSampledMarginal;
    }
    for (std::size_t x = 0; x < cfg.n_symbols && ok; ++x) {
      double acc = 0.0;
      for (std::size_t s = 0; s < cfg.n_secrets; ++s)
        acc += cells[s * cfg.n_symbols + x];
      ok = acc >= kMinSampledMarginal;
    }
    if (!ok) continue;

    return JointDistribution::validate(
        std::move(cells), cfg.n_secrets, cfg.n_symbols,
        default_labels("s", cfg.n_secrets), default_labels("x", cfg.n_symbols));
  }
  throw DegenerateDraw("resample budget of " +
                       std::to_string(kMaxResampleAttempts) +
                       " attempts exhausted");
}

double entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

double entropy_symbols(const JointDistribution& j) {
  return entropy(j.symbol_marginal());
}

}  // namespace liftguard
