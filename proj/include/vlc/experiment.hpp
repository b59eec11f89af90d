// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vlc/config.hpp"
#include "vlc/geometry.hpp"
#include "vlc/iterative.hpp"
#include "vlc/precoding.hpp"

namespace vlc {

inline constexpr int kChannelRedraws = 10;

struct Instance {
  Geometry geometry;
  ChannelMatrix channel;
  PrecoderSet precoder;
  std::uint64_t seed = 0;  // seed the geometry was actually drawn with
  int redraws = 0;
};

/// Draws geometry, channel and ZF precoder, redrawing up to kChannelRedraws
/// times on a degenerate channel. Throws DegenerateChannel when all fail.
Instance build_instance(const ScenarioConfig& config, std::uint64_t seed);

std::uint64_t trial_seed(const ScenarioConfig& config, int trial_index);

/// Algorithms a selector expands to; kAll means iterative and baseline.
std::vector<Algorithm> expand(Algorithm selector);

QosSpec make_qos(const ScenarioConfig& config, Index n_iu, Index n_ehu, double alpha);

SolverReport solve_with(Algorithm algorithm, const Instance& instance, const QosSpec& qos,
                        const ScenarioConfig& config);

struct AlgoOutcome {
  Algorithm algorithm = Algorithm::kIterative;
  double objective = 0.0;
  double sum_rate = 0.0;      // bit/s
  double total_energy = 0.0;  // W
  int iterations = 0;
  SolverStatus status = SolverStatus::kInfeasible;
};

struct TrialResult {
  int trial_index = 0;
  std::uint64_t seed = 0;
  bool channel_failed = false;
  std::vector<AlgoOutcome> outcomes;
};

/// One trial at the first alpha and first FoV of the config.
TrialResult run_trial(const ScenarioConfig& config, int trial_index);

enum class SweepKind { kAlpha, kFov, kEta, kConvergence };

SweepKind parse_sweep_kind(const std::string& name);
const char* to_string(SweepKind kind);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// Rows whose status column reads "ok".
  int feasible_rows = 0;

  std::string to_string() const;
};

/// Fixed 12-significant-digit formatting, locale independent.
std::string format_number(double value);

CsvTable run_sweep(const ScenarioConfig& config, SweepKind kind);

}  // namespace vlc
