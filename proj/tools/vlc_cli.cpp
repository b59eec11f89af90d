// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

// Command-line driver: single solves, parameter sweeps and oracle checks.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vlc/config.hpp"
#include "vlc/experiment.hpp"
#include "vlc/oracle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

struct Overrides {
  std::string config_path;
  std::string algorithm;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::string out;
};

vlc::ScenarioConfig resolve(const Overrides& o) {
  vlc::ScenarioConfig cfg =
      o.config_path.empty() ? vlc::ScenarioConfig{} : vlc::load_config(o.config_path);
  if (!o.algorithm.empty()) cfg.algorithm = vlc::parse_algorithm(o.algorithm);
  if (o.trials) cfg.trials = *o.trials;
  if (o.seed) cfg.seed = *o.seed;
  if (o.threads) cfg.threads = *o.threads;
  if (!o.out.empty()) cfg.out_path = o.out;
  cfg.phys.fov_semi_angle = cfg.fov_list.front();
  cfg.validate();
  return cfg;
}

void emit(const vlc::ScenarioConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw vlc::ConfigError("cannot write " + cfg.out_path);
  out << text;
}

std::string join(const vlc::Vec& v) {
  std::string s;
  for (vlc::Index i = 0; i < v.size(); ++i) {
    if (i > 0) s += ' ';
    s += vlc::format_number(v(i));
  }
  return s;
}

int cmd_solve(const vlc::ScenarioConfig& cfg, int trial, std::optional<double> alpha) {
  const vlc::Instance inst = vlc::build_instance(cfg, vlc::trial_seed(cfg, trial));
  const double a = alpha.value_or(cfg.alpha_list.front());
  const vlc::QosSpec qos =
      vlc::make_qos(cfg, inst.channel.num_iu, inst.channel.num_ehu(), a);
  std::string text;
  bool any_feasible = false;
  for (vlc::Algorithm algo : vlc::expand(cfg.algorithm)) {
    const vlc::SolverReport rep = vlc::solve_with(algo, inst, qos, cfg);
    any_feasible = any_feasible || rep.feasible();
    text += std::string("algorithm ") + vlc::to_string(algo) + "\n";
    text += std::string("  status ") + vlc::to_string(rep.status);
    if (!rep.feasible()) text += " (" + rep.infeasible_class + ")";
    text += "\n";
    if (!rep.feasible()) continue;
    text += "  alpha " + vlc::format_number(a) + "\n";
    text += "  weighted_sum " + vlc::format_number(rep.objective) + "\n";
    text += "  sum_rate_bps " + vlc::format_number(rep.sum_rate) + "\n";
    text += "  energy_W " + vlc::format_number(rep.total_energy) + "\n";
    text += "  iterations " + std::to_string(rep.iterations) + "\n";
    text += "  bias_A " + join(rep.allocation.bias) + "\n";
    text += "  powers_W " + join(rep.allocation.powers) + "\n";
  }
  emit(cfg, text);
  return any_feasible ? kExitOk : kExitInfeasible;
}

int cmd_sweep(const vlc::ScenarioConfig& cfg, const std::string& kind) {
  const vlc::CsvTable table = vlc::run_sweep(cfg, vlc::parse_sweep_kind(kind));
  emit(cfg, table.to_string());
  return table.feasible_rows > 0 ? kExitOk : kExitInfeasible;
}

// Tiny instances: 2x2 APs, up to 2 IUs and one EHU; iterative vs grid oracle.
int cmd_oracle_check(vlc::ScenarioConfig cfg, int n_iu, double tolerance) {
  cfg.ap_rows = 2;
  cfg.ap_cols = 2;
  cfg.n_iu = n_iu;
  cfg.n_ehu = 1;
  cfg.validate();
  const double alpha = cfg.alpha_list.front();
  vlc::CsvTable table;
  table.header = {"trial", "seed", "iterative", "oracle", "rel_gap", "status"};
  int failures = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    const vlc::Instance inst = vlc::build_instance(cfg, vlc::trial_seed(cfg, t));
    const vlc::QosSpec qos =
        vlc::make_qos(cfg, inst.channel.num_iu, inst.channel.num_ehu(), alpha);
    const vlc::SolverReport it = vlc::solve_with(vlc::Algorithm::kIterative, inst, qos, cfg);
    const vlc::OracleResult orc = vlc::grid_search(inst.channel, inst.precoder, qos, cfg.phys,
                                                   alpha, cfg.oracle_grid_points);
    std::string status = "infeasible";
    double gap = std::nan("");
    if (it.feasible() && orc.feasible) {
      gap = std::abs(it.objective - orc.objective) / std::abs(orc.objective);
      status = gap <= tolerance ? "ok" : "gap";
      if (gap > tolerance) ++failures;
      ++table.feasible_rows;
    } else if (it.feasible() != orc.feasible) {
      status = "mismatch";
      ++failures;
    }
    table.rows.push_back({std::to_string(t), std::to_string(inst.seed),
                          vlc::format_number(it.objective), vlc::format_number(orc.objective),
                          vlc::format_number(gap), status});
  }
  emit(cfg, table.to_string());
  if (table.feasible_rows == 0) return kExitInfeasible;
  return failures == 0 ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resource allocation for VLC networks with information and energy users"};
  app.require_subcommand(1);
  Overrides o;
  bool csv = true;
  app.add_option("--config", o.config_path, "JSON scenario file")->check(CLI::ExistingFile);
  app.add_option("--algorithm", o.algorithm, "iterative | baseline | oracle | all");
  app.add_option("--trials", o.trials, "Monte-Carlo trials")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "base seed; trial i uses seed + i");
  app.add_option("--threads", o.threads, "worker threads, 0 = hardware")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", o.out, "output file (default stdout)");
  app.add_flag("--csv", csv, "CSV output (the only format)");

  auto* solve = app.add_subcommand("solve", "solve one instance and print the report");
  int trial = 0;
  std::optional<double> alpha;
  solve->add_option("--trial", trial, "trial index")->check(CLI::NonNegativeNumber);
  solve->add_option("--alpha", alpha, "weight (default: first alpha in the config)")
      ->check(CLI::Range(0.0, 1.0));

  auto* sweep = app.add_subcommand("sweep", "average over trials for each sweep value");
  std::string kind = "alpha";
  sweep->add_option("--kind", kind, "alpha | fov | eta | convergence")
      ->check(CLI::IsMember({"alpha", "fov", "eta", "convergence"}));

  auto* oracle = app.add_subcommand("oracle-check", "compare against brute force on tiny cases");
  int oracle_iu = 1;
  double tolerance = 0.02;
  oracle->add_option("--iu", oracle_iu, "information users (1 or 2)")->check(CLI::Range(1, 2));
  oracle->add_option("--tolerance", tolerance, "relative objective gap allowed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const vlc::ScenarioConfig cfg = resolve(o);
    if (*solve) return cmd_solve(cfg, trial, alpha);
    if (*sweep) return cmd_sweep(cfg, kind);
    if (*oracle) return cmd_oracle_check(cfg, oracle_iu, tolerance);
  } catch (const vlc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
