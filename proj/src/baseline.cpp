// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#include "vlc/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vlc/numerics.hpp"

namespace vlc {

Vec min_equal_bias(const Mat& h_ehu, const QosSpec& qos, const PhysParams& params) {
  const double rho_popt = params.conv_factor_rho * params.led_power_Popt;
  const double upper = 2.0 * params.bias_max_IH;
  double required = params.bias_mid();
  for (Index k = 0; k < h_ehu.rows(); ++k) {
    const double target = qos.energy_thresholds(k);
    if (target == 0.0) continue;
    const double gain_sum = h_ehu.row(k).sum();
    const double c1 = params.fill_factor * rho_popt * params.thermal_voltage_Vt * gain_sum;
    const double c2 = rho_popt * gain_sum / params.dark_current_I0;
    auto f = [&](double b) { return c1 * b * std::log1p(c2 * b) - target; };
    auto df = [&](double b) { return c1 * (std::log1p(c2 * b) + c2 * b / (1.0 + c2 * b)); };
    if (!(f(upper) >= 0.0)) {
      throw InfeasibleError("energy", "EHU " + std::to_string(k) + " cannot reach its threshold");
    }
    const double b_k = newton_root(f, df, params.bias_mid(), 1e-12 * target, 0.0, upper);
    if (b_k > params.bias_max_IH) {
      throw InfeasibleError("energy", "EHU " + std::to_string(k) + " needs a bias above I_H");
    }
    required = std::max(required, b_k);
  }
  return Vec::Constant(h_ehu.cols(), required);
}

Vec max_equal_bias(const PrecoderSet& precoder, const QosSpec& qos, const PhysParams& params) {
  const Vec p_min = min_powers(qos.rate_thresholds, params);
  const Vec load = precoder.G_bar * p_min;
  const double peak = load.size() > 0 ? load.maxCoeff() : 0.0;
  const double b = std::min(params.bias_max_IH,
                            params.bias_max_IH - std::sqrt(peak) / params.led_power_Popt);
  return Vec::Constant(precoder.num_aps(), b);
}

SolverReport solve_baseline(const ChannelMatrix& channel, const PrecoderSet& precoder,
                            const QosSpec& qos, const PhysParams& params) {
  params.validate();
  qos.validate();
  SolverReport r;
  r.status = SolverStatus::kInfeasible;

  Vec b_min;
  try {
    b_min = min_equal_bias(channel.ehu(), qos, params);
  } catch (const InfeasibleError& e) {
    r.infeasible_class = e.constraint_class();
    return r;
  }
  const Vec b_max = max_equal_bias(precoder, qos, params);
  if (b_min(0) > b_max(0)) {
    r.infeasible_class = b_max(0) < params.bias_mid() ? "rate" : "energy";
    return r;
  }

  const Index n_iu = channel.num_iu;
  const Vec p_min = min_powers(qos.rate_thresholds, params);
  Allocation alloc;
  // With no IUs the rate term vanishes, so only the energy end of the blend matters.
  const double weight = n_iu == 0 ? 0.0 : qos.alpha;
  alloc.bias = weight * b_min + (1.0 - weight) * b_max;
  if (qos.alpha == 0.0 || n_iu == 0) {
    alloc.powers = p_min;
  } else {
    const double headroom = params.bias_max_IH - alloc.bias(0);
    const double cap = params.led_power_Popt * params.led_power_Popt * headroom * headroom;
    LpProblem lp = LpProblem::nonnegative(n_iu);
    lp.objective_c = Vec::Constant(n_iu, snr_coefficient(params));
    lp.lower = p_min;
    lp.ineq_A = precoder.G_bar;
    lp.ineq_b = Vec::Constant(channel.num_aps(), cap);
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::kOptimal) {
      r.infeasible_class = "rate";
      return r;
    }
    alloc.powers = sol.x.cwiseMax(p_min);
  }

  r.allocation = std::move(alloc);
  r.sum_rate = sum_rate(r.allocation.powers, params);
  r.total_energy = total_energy(r.allocation.bias, channel.ehu(), params);
  r.objective = qos.alpha * r.sum_rate + (1.0 - qos.alpha) / qos.omega * r.total_energy;
  r.iterations = 1;
  r.converged = true;
  r.status = SolverStatus::kOk;
  return r;
}

}  // namespace vlc
