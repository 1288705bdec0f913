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

#ifndef LIFTGUARD_IO_HPP_
#define LIFTGUARD_IO_HPP_

#include <filesystem>
#include <string>

#include "liftguard/distributions.hpp"
#include "liftguard/experiments.hpp"
#include "liftguard/measures.hpp"
#include "liftguard/watchdog.hpp"

namespace liftguard {

// Formats a double with 12 significant digits; "inf"/"-inf"/"nan" for
// non-finite values. All CSV and JSON exports route through this so byte
// determinism is a formatting property, not a scheduling one.
std::string fmt_g12(double v);

// Compact label for an alpha value used in CSV headers (1, 1.5, 2, inf...).
std::string alpha_label(double alpha);

// Loads {"secrets": [...], "symbols": [...], "probs": [[...]]} (rows =
// secrets). JSON syntax problems throw ConfigError; admission violations
// propagate from JointDistribution::validate.
JointDistribution load_joint_json(const std::filesystem::path& path);

// Serializes a release: partition label lists, sparse channel triplets,
// P_{S,Y}, achieved bounds, attainment flags, and the genuine ALIP level of
// the released alphabet (max_y xi, max_y |nu|). The merged super-symbol is
// exported as MERGED(<member labels>).
std::string release_to_json(const JointDistribution& input,
                            const SanitizedRelease& release);

void save_release_json(const JointDistribution& input,
                       const SanitizedRelease& release,
                       const std::filesystem::path& path);

// One LeakageReport CSV row (schema: draw_id, eps_l, eps_u, lambda, nmi,
// mi_sy, max_leakage, sibson_a{alpha}..., arimoto_a{alpha}..., ldp_factor,
// eps_u_star, eps_l_star, lower_attained, upper_attained).
std::string report_csv_header(std::span<const double> alphas);
std::string report_csv_row(const ExperimentRecord& rec,
                           std::span<const double> alphas);

// Parses a sweep config JSON document.
SweepConfig sweep_config_from_json(const std::string& text);
SweepConfig load_sweep_config(const std::filesystem::path& path);

// Runs the sweep described by cfg and writes results/<cfg.name>/ under
// out_dir: manifest.json, aggregate.csv, per_draw.csv (when enabled),
// cdf_<metric>.csv (lambda mode), histogram.csv (histogram mode), and one
// gnuplot script per figure analog. The directory is staged and renamed at
// the end; partial outputs are removed on failure. Returns the final
// directory.
std::filesystem::path write_sweep_outputs(const SweepConfig& cfg,
                                          const std::filesystem::path& out_dir,
                                          int workers = 0);

void write_histogram_csv(const HistogramSummary& h,
                         const std::filesystem::path& path);

}  // namespace liftguard

#endif  // LIFTGUARD_IO_HPP_
