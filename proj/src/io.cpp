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

#include "liftguard/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "liftguard/version.hpp"

namespace liftguard {

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

// Non-finite doubles are not representable in JSON; round-trip them as
// strings.
ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  return fmt_g12(v);
}

double number_from_json(const ordered_json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw ConfigError(std::string(what) + " must be a number or \"inf\"");
}

std::vector<double> number_list(const ordered_json& v, const char* what) {
  if (!v.is_array()) throw ConfigError(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(number_from_json(e, what));
  return out;
}

std::string scheme_name(Scheme s) {
  return s == Scheme::kCompleteMerge ? "merge" : "uniform";
}

Scheme scheme_from_name(const std::string& s) {
  if (s == "merge" || s == "complete_merge") return Scheme::kCompleteMerge;
  if (s == "uniform") return Scheme::kUniform;
  throw ConfigError("unknown scheme '" + s + "' (expected merge|uniform)");
}

std::string mode_name(SweepMode m) {
  switch (m) {
    case SweepMode::kEpsLSweep: return "eps_l_sweep";
    case SweepMode::kLambdaSweep: return "lambda_sweep";
    case SweepMode::kHistogram: return "histogram";
  }
  return "?";
}

SweepMode mode_from_name(const std::string& s) {
  if (s == "eps_l_sweep") return SweepMode::kEpsLSweep;
  if (s == "lambda_sweep") return SweepMode::kLambdaSweep;
  if (s == "histogram") return SweepMode::kHistogram;
  throw ConfigError("unknown mode '" + s + "'");
}

ordered_json alphas_to_json(const std::vector<double>& alphas) {
  ordered_json arr = ordered_json::array();
  for (double a : alphas) arr.push_back(json_number(a));
  return arr;
}

ordered_json config_to_json(const SweepConfig& cfg) {
  ordered_json j;
  j["name"] = cfg.name;
  j["mode"] = mode_name(cfg.mode);
  j["draw"] = {{"n_secrets", cfg.draw.n_secrets},
               {"n_symbols", cfg.draw.n_symbols},
               {"n_draws", cfg.draw.n_draws},
               {"seed", cfg.draw.seed}};
  if (cfg.mode == SweepMode::kEpsLSweep) {
    j["eps_u_list"] = cfg.eps_u_list;
    j["eps_l_grid"] = cfg.eps_l_grid;
  } else if (cfg.mode == SweepMode::kLambdaSweep) {
    j["total_eps_list"] = cfg.total_eps_list;
    j["lambda_list"] = cfg.lambda_list;
  }
  j["alphas"] = alphas_to_json(cfg.alphas);
  j["scheme"] = scheme_name(cfg.scheme);
  j["n_bins"] = cfg.n_bins;
  j["per_draw"] = cfg.per_draw;
  return j;
}

std::string csv_bool(bool b) { return b ? "1" : "0"; }

void write_aggregate_csv(const SweepConfig& cfg, const AggregateResult& res,
                         const std::filesystem::path& path) {
  std::ostringstream out;
  out << "eps_u,eps_l,total_eps,lambda,mean_nmi,lower_rate,upper_rate,n_draws\n";
  for (const auto& p : res.points) {
    out << fmt_g12(p.budget.eps_u) << ',' << fmt_g12(p.budget.eps_l) << ','
        << fmt_g12(p.budget.total_eps) << ',' << fmt_g12(p.budget.lambda) << ','
        << fmt_g12(p.mean_nmi) << ',' << fmt_g12(p.lower_rate) << ','
        << fmt_g12(p.upper_rate) << ',' << cfg.draw.n_draws << '\n';
  }
  write_file(path, out.str());
}

void write_per_draw_csv(const AggregateResult& res,
                        const std::filesystem::path& path) {
  std::ostringstream out;
  out << report_csv_header(res.alphas) << '\n';
  for (const auto& rec : res.per_draw) {
    out << report_csv_row(rec, res.alphas) << '\n';
  }
  write_file(path, out.str());
}

void write_cdf_csvs(const AggregateResult& res,
                    const std::filesystem::path& dir) {
  const char* metrics[] = {"nmi", "max_xi", "max_abs_nu"};
  for (const char* metric : metrics) {
    std::ostringstream out;
    out << "total_eps,lambda,eps_l,eps_u,value,cdf\n";
    for (const auto& curve : res.cdf_curves) {
      if (curve.metric != metric) continue;
      for (const auto& [value, frac] : curve.steps) {
        out << fmt_g12(curve.budget.total_eps) << ','
            << fmt_g12(curve.budget.lambda) << ','
            << fmt_g12(curve.budget.eps_l) << ','
            << fmt_g12(curve.budget.eps_u) << ',' << fmt_g12(value) << ','
            << fmt_g12(frac) << '\n';
      }
    }
    write_file(dir / (std::string("cdf_") + metric + ".csv"), out.str());
  }
}

std::string gnuplot_prelude(const std::string& ylabel,
                            const std::string& xlabel) {
  std::ostringstream out;
  out << "# generated by liftguard " << kVersion << "\n"
      << "set datafile separator comma\n"
      << "set grid\n"
      << "set key top left\n"
      << "set xlabel \"" << xlabel << "\"\n"
      << "set ylabel \"" << ylabel << "\"\n";
  return out.str();
}

void write_mean_nmi_plot(const SweepConfig& cfg,
                         const std::filesystem::path& dir) {
  std::ostringstream out;
  out << gnuplot_prelude("mean NMI", "eps_l (nats)");
  out << "plot \\\n";
  for (std::size_t i = 0; i < cfg.eps_u_list.size(); ++i) {
    const std::string eu = fmt_g12(cfg.eps_u_list[i]);
    out << "  'aggregate.csv' skip 1 using 2:($1 == " << eu
        << " ? $5 : 1/0) with linespoints title \"eps_u = " << eu << "\"";
    out << (i + 1 < cfg.eps_u_list.size() ? ", \\\n" : "\n");
  }
  write_file(dir / "plot_mean_nmi.gnuplot", out.str());
}

void write_cdf_plots(const SweepConfig& cfg, const std::filesystem::path& dir) {
  const std::pair<const char*, const char*> metrics[] = {
      {"nmi", "NMI"},
      {"max_xi", "max_y xi(y) (nats)"},
      {"max_abs_nu", "max_y |nu(y)| (nats)"},
  };
  for (const auto& [metric, label] : metrics) {
    std::ostringstream out;
    out << gnuplot_prelude("CDF", label);
    out << "plot \\\n";
    bool first = true;
    for (double total : cfg.total_eps_list) {
      for (double lambda : cfg.lambda_list) {
        if (!first) out << ", \\\n";
        first = false;
        out << "  'cdf_" << metric << ".csv' skip 1 using 5:($1 == "
            << fmt_g12(total) << " && $2 == " << fmt_g12(lambda)
            << " ? $6 : 1/0) with steps title \"eps = " << fmt_g12(total)
            << ", lambda = " << fmt_g12(lambda) << "\"";
      }
    }
    out << "\n";
    write_file(dir / (std::string("plot_cdf_") + metric + ".gnuplot"),
               out.str());
  }
}

void write_histogram_plot(const std::filesystem::path& dir) {
  std::ostringstream out;
  out << gnuplot_prelude("pmf per bin", "log-lift extreme (nats)");
  out << "set datafile missing \"-inf\"\n"
      << "set style fill transparent solid 0.45\n"
      << "plot \\\n"
      << "  'histogram.csv' skip 1 using (($1+$2)/2):3 with boxes title "
         "\"nu(x)\", \\\n"
      << "  'histogram.csv' skip 1 using (($1+$2)/2):4 with boxes title "
         "\"xi(x)\"\n";
  write_file(dir / "plot_histogram.gnuplot", out.str());
}

}  // namespace

std::string fmt_g12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string alpha_label(double alpha) {
  return fmt_g12(alpha);
}

JointDistribution load_joint_json(const std::filesystem::path& path) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("probs")) {
    throw ConfigError("joint JSON needs a \"probs\" matrix");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : doc["probs"]) {
    rows.push_back(row.get<std::vector<double>>());
  }
  std::vector<std::string> secrets, symbols;
  if (doc.contains("secrets")) {
    for (const auto& s : doc["secrets"]) secrets.push_back(s.get<std::string>());
  } else {
    for (std::size_t i = 0; i < rows.size(); ++i)
      secrets.push_back("s" + std::to_string(i + 1));
  }
  if (doc.contains("symbols")) {
    for (const auto& s : doc["symbols"]) symbols.push_back(s.get<std::string>());
  } else {
    const std::size_t n = rows.empty() ? 0 : rows.front().size();
    for (std::size_t i = 0; i < n; ++i)
      symbols.push_back("x" + std::to_string(i + 1));
  }
  return JointDistribution::validate(rows, std::move(secrets),
                                     std::move(symbols));
}

std::string release_to_json(const JointDistribution& input,
                            const SanitizedRelease& release) {
  const auto& labels = input.symbol_labels();
  ordered_json j;
  j["version"] = kVersion;
  j["scheme"] = scheme_name(release.scheme);
  j["budget"] = {{"eps_l", release.budget.eps_l},
                 {"eps_u", release.budget.eps_u}};
  j["secrets"] = input.secret_labels();

  ordered_json low = ordered_json::array(), high = ordered_json::array();
  for (std::size_t x : release.partition.low_risk) low.push_back(labels[x]);
  for (std::size_t x : release.partition.high_risk) high.push_back(labels[x]);
  j["partition"] = {{"low_risk", low}, {"high_risk", high}};

  ordered_json triplets = ordered_json::array();
  for (std::size_t x = 0; x < release.channel.n_inputs; ++x) {
    for (std::size_t y = 0; y < release.channel.n_outputs; ++y) {
      const double p = release.channel.at(x, y);
      if (p != 0.0) triplets.push_back({x, y, p});
    }
  }
  j["channel"] = {{"triplets", triplets}};

  // The merged super-symbol is exported under a synthetic label naming its
  // members; everything else keeps its input label.
  std::string merged_label = "MERGED(";
  for (std::size_t i = 0; i < release.partition.high_risk.size(); ++i) {
    if (i > 0) merged_label += ',';
    merged_label += labels[release.partition.high_risk[i]];
  }
  merged_label += ')';
  const bool merged = release.scheme == Scheme::kCompleteMerge &&
                      !release.partition.high_risk.empty();
  const std::size_t super =
      merged ? release.partition.high_risk.front() : SIZE_MAX;

  ordered_json released = ordered_json::array();
  for (std::size_t k = 0; k < release.released_symbols.size(); ++k) {
    const std::size_t y = release.released_symbols[k];
    released.push_back(merged && y == super ? merged_label : labels[y]);
  }
  j["released_symbols"] = released;

  ordered_json p_sy = ordered_json::array();
  for (std::size_t s = 0; s < release.joint_sy.n_secrets(); ++s) {
    ordered_json row = ordered_json::array();
    for (std::size_t y = 0; y < release.joint_sy.n_symbols(); ++y) {
      row.push_back(release.joint_sy.prob(s, y));
    }
    p_sy.push_back(row);
  }
  j["p_sy"] = p_sy;
  j["p_y"] = release.p_y;

  j["achieved"] = {{"eps_u_star", json_number(release.achieved_eps_u_star)},
                   {"eps_l_star", json_number(release.achieved_eps_l_star)}};
  const auto released_profile = lift_profile(release.joint_sy);
  j["alip_level"] = {{"eps_u", json_number(released_profile.max_xi())},
                     {"eps_l", json_number(released_profile.max_abs_nu())}};
  j["attainment"] = {{"lower_attained", release.lower_attained()},
                     {"upper_attained", release.upper_attained()}};
  return j.dump(2) + "\n";
}

void save_release_json(const JointDistribution& input,
                       const SanitizedRelease& release,
                       const std::filesystem::path& path) {
  write_file(path, release_to_json(input, release));
}

std::string report_csv_header(std::span<const double> alphas) {
  std::ostringstream out;
  out << "draw_id,eps_l,eps_u,lambda,nmi,mi_sy,max_leakage";
  for (double a : alphas) out << ",sibson_a" << alpha_label(a);
  for (double a : alphas) out << ",arimoto_a" << alpha_label(a);
  out << ",ldp_factor,eps_u_star,eps_l_star,lower_attained,upper_attained";
  return out.str();
}

std::string report_csv_row(const ExperimentRecord& rec,
                           std::span<const double> alphas) {
  std::ostringstream out;
  out << rec.draw_id << ',' << fmt_g12(rec.budget.eps_l) << ','
      << fmt_g12(rec.budget.eps_u) << ',' << fmt_g12(rec.budget.lambda) << ','
      << fmt_g12(rec.nmi) << ',' << fmt_g12(rec.mi_sy) << ','
      << fmt_g12(rec.max_leakage);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    out << ',' << (i < rec.sibson.size() ? fmt_g12(rec.sibson[i]) : "nan");
  }
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    out << ',' << (i < rec.arimoto.size() ? fmt_g12(rec.arimoto[i]) : "nan");
  }
  out << ',' << fmt_g12(rec.ldp) << ',' << fmt_g12(rec.eps_u_star) << ','
      << fmt_g12(rec.eps_l_star) << ',' << csv_bool(rec.lower_attained) << ','
      << csv_bool(rec.upper_attained);
  return out.str();
}

SweepConfig sweep_config_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  SweepConfig cfg;
  if (doc.contains("name")) cfg.name = doc["name"].get<std::string>();
  if (!doc.contains("mode")) throw ConfigError("config needs \"mode\"");
  cfg.mode = mode_from_name(doc["mode"].get<std::string>());

  if (!doc.contains("draw")) throw ConfigError("config needs \"draw\"");
  const auto& d = doc["draw"];
  cfg.draw.n_secrets = d.value("n_secrets", std::size_t{0});
  cfg.draw.n_symbols = d.value("n_symbols", std::size_t{0});
  cfg.draw.n_draws = d.value("n_draws", std::size_t{0});
  cfg.draw.seed = d.value("seed", std::uint64_t{0});

  if (doc.contains("eps_u_list"))
    cfg.eps_u_list = number_list(doc["eps_u_list"], "eps_u_list");
  if (doc.contains("eps_l_grid"))
    cfg.eps_l_grid = number_list(doc["eps_l_grid"], "eps_l_grid");
  if (doc.contains("total_eps_list"))
    cfg.total_eps_list = number_list(doc["total_eps_list"], "total_eps_list");
  if (doc.contains("lambda_list"))
    cfg.lambda_list = number_list(doc["lambda_list"], "lambda_list");
  if (doc.contains("alphas")) cfg.alphas = number_list(doc["alphas"], "alphas");
  if (doc.contains("scheme"))
    cfg.scheme = scheme_from_name(doc["scheme"].get<std::string>());
  if (doc.contains("n_bins")) cfg.n_bins = doc["n_bins"].get<int>();
  if (doc.contains("per_draw")) cfg.per_draw = doc["per_draw"].get<bool>();
  cfg.validate();
  return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  return sweep_config_from_json(read_file(path));
}

void write_histogram_csv(const HistogramSummary& h,
                         const std::filesystem::path& path) {
  std::ostringstream out;
  out << "bin_left,bin_right,nu_density,xi_density\n";
  out << "-inf," << fmt_g12(h.bin_edges.front()) << ','
      << fmt_g12(h.nu_density[0]) << ',' << fmt_g12(h.xi_density[0]) << '\n';
  for (std::size_t b = 0; b + 1 < h.bin_edges.size(); ++b) {
    out << fmt_g12(h.bin_edges[b]) << ',' << fmt_g12(h.bin_edges[b + 1]) << ','
        << fmt_g12(h.nu_density[b + 1]) << ',' << fmt_g12(h.xi_density[b + 1])
        << '\n';
  }
  write_file(path, out.str());
}

std::filesystem::path write_sweep_outputs(const SweepConfig& cfg,
                                          const std::filesystem::path& out_dir,
                                          int workers) {
  namespace fs = std::filesystem;
  cfg.validate();

  const fs::path staging = out_dir / (cfg.name + ".partial");
  const fs::path final_dir = out_dir / cfg.name;
  fs::remove_all(staging);
  fs::create_directories(staging);

  try {
    ordered_json manifest;
    manifest["config"] = config_to_json(cfg);
    manifest["seed"] = cfg.draw.seed;
    manifest["version"] = kVersion;
    write_file(staging / "manifest.json", manifest.dump(2) + "\n");

    switch (cfg.mode) {
      case SweepMode::kEpsLSweep: {
        const auto res = run_eps_l_sweep(cfg, workers);
        write_aggregate_csv(cfg, res, staging / "aggregate.csv");
        if (cfg.per_draw) write_per_draw_csv(res, staging / "per_draw.csv");
        write_mean_nmi_plot(cfg, staging);
        break;
      }
      case SweepMode::kLambdaSweep: {
        const auto res = run_lambda_sweep(cfg, workers);
        write_aggregate_csv(cfg, res, staging / "aggregate.csv");
        if (cfg.per_draw) write_per_draw_csv(res, staging / "per_draw.csv");
        write_cdf_csvs(res, staging);
        write_cdf_plots(cfg, staging);
        break;
      }
      case SweepMode::kHistogram: {
        const auto hist = run_histogram(cfg, workers);
        write_histogram_csv(hist, staging / "histogram.csv");
        write_histogram_plot(staging);
        break;
      }
    }
  } catch (...) {
    fs::remove_all(staging);
    throw;
  }

  fs::remove_all(final_dir);
  fs::rename(staging, final_dir);
  return final_dir;
}

}  // namespace liftguard
