// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "vlc/types.hpp"

namespace vlc {

enum class Algorithm { kIterative, kBaseline, kOracle, kAll };

Algorithm parse_algorithm(const std::string& name);
const char* to_string(Algorithm algorithm);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a run needs. Defaults reproduce the reference simulation table.
struct ScenarioConfig {
  PhysParams phys;

  Point room_dims{8.0, 8.0, 3.0};
  double user_height = 0.85;
  int ap_rows = 4;
  int ap_cols = 4;
  double ap_spacing = 2.0;  // m, lattice centered in the room

  int n_iu = 5;
  int n_ehu = 5;

  std::vector<double> fov_list{45.0, 55.0};
  std::vector<double> alpha_list{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<double> eta_list{0.0, 0.25, 0.5, 0.75, 1.0};

  double rate_threshold = 10e6;    // bit/s, every IU
  double energy_threshold = 1e-6;  // W (1 uJ per second), every EHU
  double omega = 12e3;

  int trials = 100;
  std::uint64_t seed = 1;
  Algorithm algorithm = Algorithm::kAll;

  double tol_rel = 1e-6;
  int max_iter = 200;
  double dual_step0 = 0.5;
  bool randomize_duals = false;
  int oracle_grid_points = 200;
  int threads = 0;  // 0: hardware concurrency

  std::string out_path;  // empty: stdout

  /// Throws ConfigError.
  void validate() const;
};

/// Parses a flat JSON object. Unknown keys are rejected. Currents may be
/// given in mA and voltages in mV through the `_mA` / `_mV` keys; see the
/// README for the full key list.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace vlc
