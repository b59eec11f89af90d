// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace vlc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Point = Eigen::Vector3d;
using Index = Eigen::Index;

/// Physical constants of the link budget. Internally SI: amperes, watts,
/// meters, hertz. Angles are stored in degrees.
struct PhysParams {
  double bandwidth_W = 20e6;           // Hz
  double pd_area_iu = 1e-5;            // m^2 (0.1 cm^2)
  double pd_area_ehu = 0.04;           // m^2
  double optical_filter_gain = 1.0;
  double half_intensity_angle = 60.0;  // deg
  double fov_semi_angle = 45.0;        // deg
  double conv_factor_rho = 0.53;       // A/W
  double refractive_index = 1.5;
  double bias_max_IH = 12e-3;          // A
  double bias_min_IL = 0.0;            // A
  double fill_factor = 0.75;
  double led_power_Popt = 10.0;        // W/A
  double thermal_voltage_Vt = 25e-3;   // V
  double dark_current_I0 = 1e-10;      // A
  double noise_psd_N0 = 1e-22;         // A^2/Hz
  double wall_reflectance = 0.8;
  double wall_patch_edge = 0.25;       // m

  /// Throws std::invalid_argument naming the first violated range.
  void validate() const;

  double bias_mid() const { return 0.5 * (bias_max_IH + bias_min_IL); }
  /// Per-AP message-power cap P_opt^2 ((I_H - I_L)/2)^2.
  double power_cap() const {
    const double half_swing = 0.5 * (bias_max_IH - bias_min_IL);
    return led_power_Popt * led_power_Popt * half_swing * half_swing;
  }
};

/// Thrown when the IU channel is too ill-conditioned for zero forcing.
class DegenerateChannel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a problem instance admits no point meeting its constraints.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(std::string constraint_class, const std::string& what)
      : std::runtime_error(what), constraint_class_(std::move(constraint_class)) {}
  const std::string& constraint_class() const { return constraint_class_; }

 private:
  std::string constraint_class_;
};

}  // namespace vlc
