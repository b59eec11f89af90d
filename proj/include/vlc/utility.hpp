// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "vlc/geometry.hpp"
#include "vlc/precoding.hpp"
#include "vlc/types.hpp"

namespace vlc {

/// Joint decision: per-AP DC bias (A) and per-IU message power (W).
struct Allocation {
  Vec bias;
  Vec powers;
};

struct QosSpec {
  Vec rate_thresholds;    // bit/s, one per IU
  Vec energy_thresholds;  // W, one per EHU
  double alpha = 0.5;
  double omega = 12e3;

  /// Same thresholds for every user.
  static QosSpec uniform(Index n_iu, Index n_ehu, double rate, double energy, double alpha,
                         double omega);
  void validate() const;
};

/// Rate prefactor W/2.
inline double rate_prefactor(const PhysParams& p) { return 0.5 * p.bandwidth_W; }

/// SNR per unit message power, e rho^2 P_opt^2 / (2 pi W N0).
inline double snr_coefficient(const PhysParams& p) {
  const double rho = p.conv_factor_rho;
  const double popt = p.led_power_Popt;
  return std::numbers::e * rho * rho * popt * popt /
         (2.0 * std::numbers::pi * p.bandwidth_W * p.noise_psd_N0);
}

/// Sum-rate lower bound in bit/s. Throws on negative powers.
template <typename Derived>
double sum_rate(const Eigen::MatrixBase<Derived>& powers, const PhysParams& params) {
  if (powers.size() > 0 && powers.minCoeff() < 0.0) {
    throw std::invalid_argument("message powers must be nonnegative");
  }
  const double gamma = snr_coefficient(params);
  double bits = 0.0;
  for (Index j = 0; j < powers.size(); ++j) bits += std::log2(1.0 + gamma * powers(j));
  return rate_prefactor(params) * bits;
}

/// Smallest message power reaching `rate` bit/s.
double min_power(double rate, const PhysParams& params);
Vec min_powers(const Vec& rates, const PhysParams& params);

/// Exact bias from powers, b = I_H 1 - sqrt(G_bar P) / P_opt. The result
/// is never clamped; use linear_range_violations() to audit it.
Vec bias_from_powers(const Vec& powers, const PrecoderSet& precoder, const PhysParams& params);

/// Indices of APs whose bias falls below the linear-range floor (I_H+I_L)/2
/// (beyond a relative slack `rel_tol` of the half swing) or above I_H.
std::vector<Index> linear_range_violations(const Vec& bias, const PhysParams& params,
                                           double rel_tol = 0.0);

/// Harvested power of one EHU (W).
template <typename DerivedB, typename DerivedH>
double harvested_energy(const Eigen::MatrixBase<DerivedB>& bias,
                        const Eigen::MatrixBase<DerivedH>& h_k, const PhysParams& params) {
  const double i_dc = params.conv_factor_rho * params.led_power_Popt * h_k.dot(bias);
  return params.fill_factor * params.thermal_voltage_Vt * i_dc *
         std::log1p(i_dc / params.dark_current_I0);
}

template <typename DerivedB, typename DerivedH>
double total_energy(const Eigen::MatrixBase<DerivedB>& bias,
                    const Eigen::MatrixBase<DerivedH>& h_ehu, const PhysParams& params) {
  double sum = 0.0;
  for (Index k = 0; k < h_ehu.rows(); ++k) {
    sum += harvested_energy(bias, h_ehu.row(k).transpose(), params);
  }
  return sum;
}

/// alpha f_R(P) + (1 - alpha)/omega f_E(b).
double weighted_objective(const Allocation& alloc, const QosSpec& qos,
                          const ChannelMatrix& channel, const PhysParams& params);

}  // namespace vlc
