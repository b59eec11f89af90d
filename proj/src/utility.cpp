// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#include "vlc/utility.hpp"

namespace vlc {

QosSpec QosSpec::uniform(Index n_iu, Index n_ehu, double rate, double energy, double alpha,
                         double omega) {
  QosSpec q;
  q.rate_thresholds = Vec::Constant(n_iu, rate);
  q.energy_thresholds = Vec::Constant(n_ehu, energy);
  q.alpha = alpha;
  q.omega = omega;
  return q;
}

void QosSpec::validate() const {
  if (rate_thresholds.size() > 0 && rate_thresholds.minCoeff() < 0.0) {
    throw std::invalid_argument("rate thresholds must be nonnegative");
  }
  if (energy_thresholds.size() > 0 && energy_thresholds.minCoeff() < 0.0) {
    throw std::invalid_argument("energy thresholds must be nonnegative");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
}

double min_power(double rate, const PhysParams& params) {
  if (rate < 0.0) throw std::invalid_argument("rate threshold must be nonnegative");
  return std::expm1(rate / rate_prefactor(params) * std::numbers::ln2) / snr_coefficient(params);
}

Vec min_powers(const Vec& rates, const PhysParams& params) {
  Vec out(rates.size());
  for (Index j = 0; j < rates.size(); ++j) out(j) = min_power(rates(j), params);
  return out;
}

Vec bias_from_powers(const Vec& powers, const PrecoderSet& precoder, const PhysParams& params) {
  const Vec ap_power = precoder.G_bar * powers;
  if (ap_power.size() > 0 && ap_power.minCoeff() < 0.0) {
    throw std::invalid_argument("AP signal power must be nonnegative");
  }
  return (Vec::Constant(ap_power.size(), params.bias_max_IH) -
          ap_power.cwiseSqrt() / params.led_power_Popt)
      .eval();
}

std::vector<Index> linear_range_violations(const Vec& bias, const PhysParams& params,
                                           double rel_tol) {
  const double slack = rel_tol * (params.bias_max_IH - params.bias_min_IL);
  std::vector<Index> bad;
  for (Index i = 0; i < bias.size(); ++i) {
    if (bias(i) < params.bias_mid() - slack || bias(i) > params.bias_max_IH + slack) {
      bad.push_back(i);
    }
  }
  return bad;
}

double weighted_objective(const Allocation& alloc, const QosSpec& qos,
                          const ChannelMatrix& channel, const PhysParams& params) {
  const double rate = sum_rate(alloc.powers, params);
  const double energy = total_energy(alloc.bias, channel.ehu(), params);
  return qos.alpha * rate + (1.0 - qos.alpha) / qos.omega * energy;
}

}  // namespace vlc
