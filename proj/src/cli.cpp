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

#include "liftguard/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "liftguard/experiments.hpp"
#include "liftguard/io.hpp"
#include "liftguard/measures.hpp"
#include "liftguard/version.hpp"

namespace liftguard {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// LIFTGUARD_OUT takes precedence over --out.
void apply_output_env(CliConfig& cfg) {
  if (const char* env = std::getenv("LIFTGUARD_OUT"); env && *env) {
    cfg.output_dir = env;
  }
}

double parse_alpha_token(const std::string& tok) {
  if (tok == "inf") return kAlphaInf;
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used == tok.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("bad alpha '" + tok + "'");
}

std::vector<double> parse_alphas(const std::vector<std::string>& tokens) {
  std::vector<double> out;
  for (const auto& t : tokens) {
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(parse_alpha_token(item));
    }
  }
  return out;
}

// Applies "a.b.c=value" overrides onto the raw config document. Values are
// parsed as JSON scalars, falling back to plain strings.
void apply_overrides(ordered_json& doc,
                     const std::vector<std::string>& overrides) {
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("override must look like key=value, got '" + kv + "'");
    }
    const std::string key = kv.substr(0, eq);
    const std::string raw = kv.substr(eq + 1);
    ordered_json value;
    try {
      value = ordered_json::parse(raw);
    } catch (const nlohmann::json::exception&) {
      value = raw;
    }
    ordered_json* node = &doc;
    std::stringstream ss(key);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      node = &(*node)[parts[i]];
    }
    (*node)[parts.back()] = value;
  }
}

SweepConfig load_config_with_overrides(const CliConfig& cfg) {
  std::ifstream in(cfg.config_path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + cfg.config_path);
  std::ostringstream buf;
  buf << in.rdbuf();

  ordered_json doc;
  try {
    doc = ordered_json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  apply_overrides(doc, cfg.overrides);
  if (cfg.seed) doc["draw"]["seed"] = *cfg.seed;
  return sweep_config_from_json(doc.dump());
}

ExperimentRecord record_for_release(const JointDistribution& j,
                                    const SanitizedRelease& release,
                                    std::span<const double> alphas) {
  ExperimentRecord rec;
  rec.budget.eps_l = release.budget.eps_l;
  rec.budget.eps_u = release.budget.eps_u;
  rec.budget.total_eps = release.budget.total();
  rec.budget.lambda = rec.budget.total_eps > 0.0
                          ? release.budget.eps_l / rec.budget.total_eps
                          : 0.5;
  rec.nmi = watchdog_utility(j, release.partition).nmi;
  rec.eps_u_star = release.achieved_eps_u_star;
  rec.eps_l_star = release.achieved_eps_l_star;
  rec.lower_attained = release.lower_attained();
  rec.upper_attained = release.upper_attained();

  const auto prof = lift_profile(release.joint_sy);
  rec.max_xi_released = prof.max_xi();
  rec.max_abs_nu_released = prof.max_abs_nu();

  rec.mi_sy = mutual_information(release.joint_sy);
  rec.max_leakage = maximal_leakage(release.joint_sy);
  rec.ldp = ldp_factor(release.joint_sy);
  for (double a : alphas) {
    rec.sibson.push_back(sibson_mi(release.joint_sy, a));
    rec.arimoto.push_back(arimoto_mi(release.joint_sy, a));
  }
  return rec;
}

void print_violations(const std::vector<BoundCheck>& checks,
                      const std::string& context) {
  for (const auto& c : checks) {
    if (!c.satisfied) {
      std::cout << "VIOLATION " << context << " " << c.name
                << " lhs=" << fmt_g12(c.lhs) << " rhs=" << fmt_g12(c.rhs)
                << "\n";
    }
  }
}

int verify_release_file(const CliConfig& cfg) {
  ordered_json doc;
  {
    std::ifstream in(cfg.input_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + cfg.input_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      doc = ordered_json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
  }
  if (!doc.contains("p_sy") || !doc.contains("alip_level")) {
    throw ConfigError("release file needs p_sy and alip_level");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : doc["p_sy"]) {
    rows.push_back(row.get<std::vector<double>>());
  }
  const auto joint = JointDistribution::validate(rows);

  auto level_num = [&](const char* key) {
    const auto& v = doc["alip_level"][key];
    if (v.is_number()) return v.get<double>();
    if (v.is_string() && v.get<std::string>() == "inf") {
      return std::numeric_limits<double>::infinity();
    }
    throw ConfigError("alip_level entries must be numbers or \"inf\"");
  };
  const double eps_u_eff = level_num("eps_u");
  const double eps_l_eff = level_num("eps_l");

  const auto alphas = cfg.alphas.empty() ? default_alphas() : cfg.alphas;
  const auto report = leakage_report(joint, alphas, 0.0);
  const auto checks = verify_bounds(report, eps_l_eff, eps_u_eff, alphas);

  std::size_t violations = 0;
  for (const auto& c : checks) {
    if (!c.satisfied) ++violations;
  }
  print_violations(checks, "release=" + cfg.input_path);
  std::cout << "checked " << checks.size() << " bounds against claimed level"
            << " eps_l*=" << fmt_g12(eps_l_eff)
            << " eps_u*=" << fmt_g12(eps_u_eff) << ": " << violations
            << " violation(s)\n";
  return violations == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int cmd_sanitize(const CliConfig& cfg) {
  PrivacyBudget budget{cfg.eps_l, cfg.eps_u};
  budget.validate();

  const auto joint = load_joint_json(cfg.input_path);
  const auto release = sanitize(joint, budget, cfg.scheme);

  fs::create_directories(cfg.output_dir);
  save_release_json(joint, release, fs::path(cfg.output_dir) / "release.json");

  const auto alphas = cfg.alphas.empty() ? default_alphas() : cfg.alphas;
  const auto rec = record_for_release(joint, release, alphas);
  std::ofstream csv(fs::path(cfg.output_dir) / "report.csv",
                    std::ios::binary);
  csv << report_csv_header(alphas) << '\n'
      << report_csv_row(rec, alphas) << '\n';

  std::cout << "released " << release.released_symbols.size() << "/"
            << joint.n_symbols() << " symbols, high-risk "
            << release.partition.high_risk.size() << "\n"
            << "eps_u_star=" << fmt_g12(release.achieved_eps_u_star)
            << " eps_l_star=" << fmt_g12(release.achieved_eps_l_star) << "\n"
            << "lower_attained=" << (release.lower_attained() ? "true" : "false")
            << " upper_attained="
            << (release.upper_attained() ? "true" : "false") << "\n";
  return kExitOk;
}

int cmd_sweep(const CliConfig& cfg) {
  const auto sweep_cfg = load_config_with_overrides(cfg);
  const auto dir =
      write_sweep_outputs(sweep_cfg, cfg.output_dir, cfg.workers);
  std::cout << "wrote " << dir.string() << "\n";
  return kExitOk;
}

int cmd_histogram(const CliConfig& cfg) {
  auto sweep_cfg = load_config_with_overrides(cfg);
  sweep_cfg.mode = SweepMode::kHistogram;
  const auto dir =
      write_sweep_outputs(sweep_cfg, cfg.output_dir, cfg.workers);
  std::cout << "wrote " << dir.string() << "\n";
  return kExitOk;
}

int cmd_verify(const CliConfig& cfg) {
  if (!cfg.input_path.empty()) return verify_release_file(cfg);

  PrivacyBudget budget{cfg.eps_l, cfg.eps_u};
  budget.validate();
  RandomDrawConfig draw = cfg.draw;
  if (cfg.seed) draw.seed = *cfg.seed;
  draw.validate();
  const auto alphas = cfg.alphas.empty() ? default_alphas() : cfg.alphas;

  std::size_t violations = 0;
  std::size_t checked = 0;
  for (std::size_t d = 0; d < draw.n_draws; ++d) {
    const auto j = sample_joint(draw, d);
    const auto release = sanitize(j, budget, cfg.scheme);
    // Verify against the genuine ALIP level of the released alphabet.
    const auto prof = lift_profile(release.joint_sy);
    const auto report =
        leakage_report(release.joint_sy, alphas,
                       watchdog_utility(j, release.partition).nmi);
    const auto checks =
        verify_bounds(report, prof.max_abs_nu(), prof.max_xi(), alphas);
    checked += checks.size();
    for (const auto& c : checks) {
      if (!c.satisfied) ++violations;
    }
    print_violations(checks, "draw=" + std::to_string(d));
  }
  std::cout << "verified " << checked << " bounds across " << draw.n_draws
            << " draws: " << violations << " violation(s)\n";
  return violations == 0 ? kExitOk : kExitViolation;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"ALIP watchdog sanitization and privacy-utility experiments"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CliConfig cfg;
  std::vector<std::string> alpha_tokens;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.output_dir, "output directory");
    sub->add_option("--workers", cfg.workers, "worker threads (0 = all)");
  };

  auto* sanitize_cmd =
      app.add_subcommand("sanitize", "sanitize one joint distribution");
  sanitize_cmd->add_option("--input", cfg.input_path, "joint JSON file")
      ->required();
  sanitize_cmd->add_option("--eps-l", cfg.eps_l, "lower budget (nats)")
      ->required();
  sanitize_cmd->add_option("--eps-u", cfg.eps_u, "upper budget (nats)")
      ->required();
  sanitize_cmd
      ->add_option("--scheme", cfg.scheme, "randomization scheme")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Scheme>{{"merge", Scheme::kCompleteMerge},
                                        {"uniform", Scheme::kUniform}}));
  sanitize_cmd->add_option("--alphas", alpha_tokens,
                           "alpha grid (comma separated, inf allowed)");
  add_common(sanitize_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "run a Monte-Carlo sweep");
  sweep_cmd->add_option("--config", cfg.config_path, "sweep config JSON")
      ->required();
  sweep_cmd->add_option("--seed", cfg.seed, "override draw seed");
  sweep_cmd->add_option("--override", cfg.overrides,
                        "config override key=value (repeatable)");
  add_common(sweep_cmd);

  auto* hist_cmd =
      app.add_subcommand("histogram", "pooled nu/xi histogram across draws");
  hist_cmd->add_option("--config", cfg.config_path, "sweep config JSON")
      ->required();
  hist_cmd->add_option("--seed", cfg.seed, "override draw seed");
  hist_cmd->add_option("--override", cfg.overrides,
                       "config override key=value (repeatable)");
  add_common(hist_cmd);

  auto* verify_cmd = app.add_subcommand(
      "verify", "check the leakage bounds across draws or on a release file");
  verify_cmd->add_option("--input", cfg.input_path,
                         "release JSON to verify instead of sampling");
  verify_cmd->add_option("--draws", cfg.draw.n_draws, "number of draws");
  verify_cmd->add_option("--secrets", cfg.draw.n_secrets, "|S|");
  verify_cmd->add_option("--symbols", cfg.draw.n_symbols, "|X|");
  verify_cmd->add_option("--seed", cfg.seed, "draw seed");
  verify_cmd->add_option("--eps-l", cfg.eps_l, "lower budget (nats)");
  verify_cmd->add_option("--eps-u", cfg.eps_u, "upper budget (nats)");
  verify_cmd
      ->add_option("--scheme", cfg.scheme, "randomization scheme")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Scheme>{{"merge", Scheme::kCompleteMerge},
                                        {"uniform", Scheme::kUniform}}));
  verify_cmd->add_option("--alphas", alpha_tokens,
                         "alpha grid (comma separated, inf allowed)");
  add_common(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    cfg.alphas = parse_alphas(alpha_tokens);
    apply_output_env(cfg);
    if (sanitize_cmd->parsed()) {
      cfg.command = CliConfig::Command::kSanitize;
      return cmd_sanitize(cfg);
    }
    if (sweep_cmd->parsed()) {
      cfg.command = CliConfig::Command::kSweep;
      return cmd_sweep(cfg);
    }
    if (hist_cmd->parsed()) {
      cfg.command = CliConfig::Command::kHistogram;
      return cmd_histogram(cfg);
    }
    cfg.command = CliConfig::Command::kVerify;
    return cmd_verify(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace liftguard
