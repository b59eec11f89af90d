// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#include "vlc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "vlc/baseline.hpp"
#include "vlc/oracle.hpp"

namespace vlc {

Instance build_instance(const ScenarioConfig& config, std::uint64_t seed) {
  std::uint64_t s = seed;
  for (int attempt = 0; attempt <= kChannelRedraws; ++attempt) {
    Instance inst;
    inst.geometry = build_geometry(config, s);
    inst.channel = channel_matrix(inst.geometry, config.phys);
    try {
      inst.precoder = zf_precoder(inst.channel.iu());
      inst.seed = s;
      inst.redraws = attempt;
      return inst;
    } catch (const DegenerateChannel&) {
      // golden-ratio stride keeps redraw seeds away from other trials' bases
      s += 0x9E3779B97F4A7C15ULL;
    }
  }
  throw DegenerateChannel("channel stayed degenerate after redraws");
}

std::uint64_t trial_seed(const ScenarioConfig& config, int trial_index) {
  return config.seed + static_cast<std::uint64_t>(trial_index);
}

std::vector<Algorithm> expand(Algorithm selector) {
  if (selector == Algorithm::kAll) return {Algorithm::kIterative, Algorithm::kBaseline};
  return {selector};
}

QosSpec make_qos(const ScenarioConfig& config, Index n_iu, Index n_ehu, double alpha) {
  return QosSpec::uniform(n_iu, n_ehu, config.rate_threshold, config.energy_threshold, alpha,
                          config.omega);
}

SolverReport solve_with(Algorithm algorithm, const Instance& instance, const QosSpec& qos,
                        const ScenarioConfig& config) {
  const PhysParams& phys = config.phys;
  switch (algorithm) {
    case Algorithm::kIterative: {
      SolverOptions opts;
      opts.tol_rel = config.tol_rel;
      opts.max_iter = config.max_iter;
      opts.step0 = config.dual_step0;
      opts.randomize_duals = config.randomize_duals;
      opts.seed = instance.seed;
      return solve_weighted(instance.channel, instance.precoder, qos, phys, opts);
    }
    case Algorithm::kBaseline:
      return solve_baseline(instance.channel, instance.precoder, qos, phys);
    case Algorithm::kOracle: {
      const OracleResult res = grid_search(instance.channel, instance.precoder, qos, phys,
                                           qos.alpha, config.oracle_grid_points);
      SolverReport rep;
      rep.status = res.feasible ? SolverStatus::kOk : SolverStatus::kInfeasible;
      if (!res.feasible) {
        rep.infeasible_class = "grid";
        return rep;
      }
      rep.allocation = res.allocation;
      rep.objective = res.objective;
      rep.sum_rate = sum_rate(res.allocation.powers, phys);
      rep.total_energy = total_energy(res.allocation.bias, instance.channel.ehu(), phys);
      rep.iterations = static_cast<int>(
          std::min<std::int64_t>(res.evaluated, std::numeric_limits<int>::max()));
      rep.converged = true;
      return rep;
    }
    case Algorithm::kAll:
      break;
  }
  throw std::invalid_argument("solve_with needs a single algorithm");
}

namespace {

AlgoOutcome outcome(Algorithm algorithm, const SolverReport& rep) {
  return {algorithm, rep.objective, rep.sum_rate, rep.total_energy, rep.iterations, rep.status};
}

ScenarioConfig with_fov(ScenarioConfig config, double fov) {
  config.phys.fov_semi_angle = fov;
  return config;
}

ScenarioConfig with_eta(ScenarioConfig config, double eta) {
  const int total = config.n_iu + config.n_ehu;
  config.n_ehu = static_cast<int>(std::lround(eta * total));
  config.n_iu = total - config.n_ehu;
  return config;
}

std::vector<AlgoOutcome> solve_all(const ScenarioConfig& config, const Instance& inst,
                                   double alpha) {
  const QosSpec qos =
      make_qos(config, inst.channel.num_iu, inst.channel.num_ehu(), alpha);
  std::vector<AlgoOutcome> out;
  for (Algorithm a : expand(config.algorithm)) {
    out.push_back(outcome(a, solve_with(a, inst, qos, config)));
  }
  return out;
}

unsigned worker_count(const ScenarioConfig& config, int jobs) {
  unsigned n = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                  : std::max(1u, std::thread::hardware_concurrency());
  return std::min(n, static_cast<unsigned>(std::max(jobs, 1)));
}

// Runs job(i) for i in [0, jobs) on a small pool; rethrows the first error.
void parallel_for(int jobs, unsigned workers, const std::function<void(int)>& job) {
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (int i = next++; i < jobs; i = next++) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = jobs;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
}

// results[trial][value] holds per-algorithm outcomes; empty when the channel failed.
using TrialGrid = std::vector<std::vector<std::vector<AlgoOutcome>>>;

TrialGrid run_grid(const ScenarioConfig& config, std::size_t n_values,
                   const std::function<std::vector<std::vector<AlgoOutcome>>(int)>& trial) {
  TrialGrid grid(static_cast<std::size_t>(config.trials));
  parallel_for(config.trials, worker_count(config, config.trials), [&](int t) {
    auto res = trial(t);
    if (!res.empty() && res.size() != n_values) throw std::logic_error("sweep shape mismatch");
    grid[static_cast<std::size_t>(t)] = std::move(res);
  });
  return grid;
}

CsvTable aggregate(const ScenarioConfig& config, const std::string& key_name,
                   const std::vector<double>& values, const TrialGrid& grid) {
  CsvTable table;
  table.header = {key_name,        "algo",           "weighted_sum", "sum_rate_bps",
                  "energy_W",      "feasible_trials", "mean_iterations", "status"};
  const auto algos = expand(config.algorithm);
  for (std::size_t v = 0; v < values.size(); ++v) {
    for (std::size_t a = 0; a < algos.size(); ++a) {
      double obj = 0.0, rate = 0.0, energy = 0.0, iters = 0.0;
      int count = 0;
      for (const auto& trial : grid) {
        if (trial.empty()) continue;
        const AlgoOutcome& o = trial[v][a];
        if (o.status == SolverStatus::kInfeasible) continue;
        obj += o.objective;
        rate += o.sum_rate;
        energy += o.total_energy;
        iters += o.iterations;
        ++count;
      }
      const double nan = std::numeric_limits<double>::quiet_NaN();
      const double inv = count > 0 ? 1.0 / count : nan;
      table.rows.push_back({format_number(values[v]), to_string(algos[a]),
                            format_number(obj * inv), format_number(rate * inv),
                            format_number(energy * inv), std::to_string(count),
                            format_number(iters * inv), count > 0 ? "ok" : "infeasible"});
      if (count > 0) ++table.feasible_rows;
    }
  }
  return table;
}

std::vector<std::vector<AlgoOutcome>> per_value(
    const std::vector<double>& values,
    const std::function<std::vector<AlgoOutcome>(double)>& run) {
  std::vector<std::vector<AlgoOutcome>> out;
  try {
    for (double v : values) out.push_back(run(v));
  } catch (const DegenerateChannel&) {
    out.clear();
  }
  return out;
}

CsvTable convergence_table(const ScenarioConfig& config) {
  CsvTable table;
  table.header = {"fov_deg",  "alpha",    "iteration",   "weighted_sum",
                  "sum_rate_bps", "energy_W", "bias_change", "status"};
  const double alpha = config.alpha_list.front();
  for (double fov : config.fov_list) {
    const ScenarioConfig c = with_fov(config, fov);
    const Instance inst = build_instance(c, trial_seed(c, 0));
    const QosSpec qos = make_qos(c, inst.channel.num_iu, inst.channel.num_ehu(), alpha);
    const SolverReport rep = solve_with(Algorithm::kIterative, inst, qos, c);
    const char* status = to_string(rep.status);
    for (std::size_t i = 0; i < rep.trace.size(); ++i) {
      const TracePoint& p = rep.trace[i];
      table.rows.push_back({format_number(fov), format_number(alpha), std::to_string(i + 1),
                            format_number(p.objective), format_number(p.sum_rate),
                            format_number(p.total_energy), format_number(p.bias_change),
                            status});
    }
    if (rep.trace.empty()) {
      table.rows.push_back({format_number(fov), format_number(alpha), "0", "nan", "nan", "nan",
                            "nan", status});
    }
    if (rep.feasible()) ++table.feasible_rows;
  }
  return table;
}

}  // namespace

TrialResult run_trial(const ScenarioConfig& config, int trial_index) {
  TrialResult result;
  result.trial_index = trial_index;
  result.seed = trial_seed(config, trial_index);
  const ScenarioConfig c = with_fov(config, config.fov_list.front());
  try {
    const Instance inst = build_instance(c, result.seed);
    result.outcomes = solve_all(c, inst, c.alpha_list.front());
  } catch (const DegenerateChannel&) {
    result.channel_failed = true;
  }
  return result;
}

SweepKind parse_sweep_kind(const std::string& name) {
  if (name == "alpha") return SweepKind::kAlpha;
  if (name == "fov") return SweepKind::kFov;
  if (name == "eta") return SweepKind::kEta;
  if (name == "convergence") return SweepKind::kConvergence;
  throw ConfigError("unknown sweep kind '" + name + "'");
}

const char* to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::kAlpha:
      return "alpha";
    case SweepKind::kFov:
      return "fov";
    case SweepKind::kEta:
      return "eta";
    case SweepKind::kConvergence:
      return "convergence";
  }
  return "?";
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string CsvTable::to_string() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

CsvTable run_sweep(const ScenarioConfig& config, SweepKind kind) {
  config.validate();
  const double alpha0 = config.alpha_list.front();
  switch (kind) {
    case SweepKind::kAlpha: {
      const ScenarioConfig c = with_fov(config, config.fov_list.front());
      const auto grid = run_grid(c, c.alpha_list.size(), [&](int t) {
        std::vector<std::vector<AlgoOutcome>> out;
        try {
          const Instance inst = build_instance(c, trial_seed(c, t));
          for (double a : c.alpha_list) out.push_back(solve_all(c, inst, a));
        } catch (const DegenerateChannel&) {
          out.clear();
        }
        return out;
      });
      return aggregate(c, "alpha", c.alpha_list, grid);
    }
    case SweepKind::kFov: {
      const auto grid = run_grid(config, config.fov_list.size(), [&](int t) {
        return per_value(config.fov_list, [&](double fov) {
          const ScenarioConfig c = with_fov(config, fov);
          return solve_all(c, build_instance(c, trial_seed(c, t)), alpha0);
        });
      });
      return aggregate(config, "fov_deg", config.fov_list, grid);
    }
    case SweepKind::kEta: {
      const ScenarioConfig base = with_fov(config, config.fov_list.front());
      const auto grid = run_grid(base, base.eta_list.size(), [&](int t) {
        return per_value(base.eta_list, [&](double eta) {
          const ScenarioConfig c = with_eta(base, eta);
          return solve_all(c, build_instance(c, trial_seed(c, t)), alpha0);
        });
      });
      return aggregate(base, "eta", base.eta_list, grid);
    }
    case SweepKind::kConvergence:
      return convergence_table(config);
  }
  throw std::invalid_argument("unknown sweep kind");
}

}  // namespace vlc
