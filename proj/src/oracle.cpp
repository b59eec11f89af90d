// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#include "vlc/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace vlc {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEuler = 2.71828182845904523536;

struct Constants {
  double half_band;     // bit/s per log2 unit
  double snr_per_watt;  // e rho^2 Popt^2 / (2 pi W N0)
  double cap;           // Popt^2 ((IH - IL)/2)^2
  double floor_bias;    // (IH + IL)/2
};

Constants constants(const PhysParams& p) {
  Constants c;
  c.half_band = p.bandwidth_W / 2.0;
  c.snr_per_watt = kEuler * p.conv_factor_rho * p.conv_factor_rho * p.led_power_Popt *
                   p.led_power_Popt / (2.0 * kPi * p.bandwidth_W * p.noise_psd_N0);
  const double half = (p.bias_max_IH - p.bias_min_IL) / 2.0;
  c.cap = p.led_power_Popt * p.led_power_Popt * half * half;
  c.floor_bias = (p.bias_max_IH + p.bias_min_IL) / 2.0;
  return c;
}

std::vector<double> axis(double lo, double hi, int points) {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(points));
  if (hi <= lo) {
    v.push_back(lo);
    return v;
  }
  double start = lo;
  int log_points = points;
  if (lo <= 0.0) {
    v.push_back(0.0);
    start = hi * 1e-9;
    --log_points;
  }
  if (log_points == 1) {
    v.push_back(hi);
    return v;
  }
  const double ratio = std::log(hi / start);
  for (int k = 0; k < log_points; ++k) {
    const double frac = static_cast<double>(k) / (log_points - 1);
    v.push_back(k == log_points - 1 ? hi : start * std::exp(ratio * frac));
  }
  return v;
}

}  // namespace

OracleResult grid_search(const ChannelMatrix& channel, const PrecoderSet& precoder,
                         const QosSpec& qos, const PhysParams& params, double alpha,
                         int grid_points_per_dim) {
  const Index n_iu = channel.num_iu;
  if (n_iu > 2) throw std::invalid_argument("grid search handles at most two IUs");
  if (grid_points_per_dim < 2) throw std::invalid_argument("need at least two grid points");
  const Constants c = constants(params);
  const Index n_aps = precoder.G.rows();

  // minimum power from the rate floor: beta log2(1 + s P) = R
  std::vector<double> p_lo(static_cast<std::size_t>(n_iu));
  for (Index j = 0; j < n_iu; ++j) {
    p_lo[static_cast<std::size_t>(j)] =
        (std::pow(2.0, qos.rate_thresholds(j) / c.half_band) - 1.0) / c.snr_per_watt;
  }
  std::vector<std::vector<double>> axes;
  for (Index j = 0; j < n_iu; ++j) {
    double top = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n_aps; ++i) {
      const double gij = precoder.G(i, j) * precoder.G(i, j);
      if (gij <= 0.0) continue;
      double others = 0.0;
      for (Index l = 0; l < n_iu; ++l) {
        if (l != j) others += precoder.G(i, l) * precoder.G(i, l) * p_lo[static_cast<std::size_t>(l)];
      }
      top = std::min(top, (c.cap - others) / gij);
    }
    axes.push_back(axis(p_lo[static_cast<std::size_t>(j)], top, grid_points_per_dim));
  }

  OracleResult best;
  best.objective = -std::numeric_limits<double>::infinity();
  Vec powers(n_iu);
  Vec bias(n_aps);
  auto evaluate = [&] {
    ++best.evaluated;
    for (Index j = 0; j < n_iu; ++j) {
      if (powers(j) < p_lo[static_cast<std::size_t>(j)]) return;
    }
    for (Index i = 0; i < n_aps; ++i) {
      double load = 0.0;
      for (Index j = 0; j < n_iu; ++j) load += precoder.G(i, j) * precoder.G(i, j) * powers(j);
      if (load > c.cap) return;
      bias(i) = params.bias_max_IH - std::sqrt(load) / params.led_power_Popt;
      if (bias(i) < c.floor_bias) return;
    }
    double energy = 0.0;
    const Index first_ehu = n_iu;
    for (Index k = 0; k < channel.gains.rows() - first_ehu; ++k) {
      double received = 0.0;
      for (Index i = 0; i < n_aps; ++i) received += channel.gains(first_ehu + k, i) * bias(i);
      const double current = params.conv_factor_rho * params.led_power_Popt * received;
      const double e = params.fill_factor * current * params.thermal_voltage_Vt *
                       std::log(1.0 + current / params.dark_current_I0);
      if (e < qos.energy_thresholds(k)) return;
      energy += e;
    }
    double rate = 0.0;
    for (Index j = 0; j < n_iu; ++j) {
      const double bits = c.half_band * std::log2(1.0 + c.snr_per_watt * powers(j));
      if (bits < qos.rate_thresholds(j) * (1.0 - 1e-12)) return;
      rate += bits;
    }
    const double objective = alpha * rate + (1.0 - alpha) / qos.omega * energy;
    if (objective > best.objective) {
      best.objective = objective;
      best.allocation.powers = powers;
      best.allocation.bias = bias;
      best.feasible = true;
    }
  };

  if (n_iu == 0) {
    evaluate();
  } else if (n_iu == 1) {
    for (double p0 : axes[0]) {
      powers(0) = p0;
      evaluate();
    }
  } else {
    for (double p0 : axes[0]) {
      for (double p1 : axes[1]) {
        powers(0) = p0;
        powers(1) = p1;
        evaluate();
      }
    }
  }
  if (!best.feasible) best.objective = 0.0;
  return best;
}

}  // namespace vlc
