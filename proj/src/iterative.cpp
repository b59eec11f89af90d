// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#include "vlc/iterative.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "vlc/numerics.hpp"

namespace vlc {

const char* to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::kOk:
      return "ok";
    case SolverStatus::kInfeasible:
      return "infeasible";
    case SolverStatus::kMaxIter:
      return "max_iter";
  }
  return "?";
}

namespace {

// Relative slack used when scoring iterates against the exact constraints.
constexpr double kScoreTol = 1e-9;
constexpr int kMaxStepHalvings = 60;
// Duality gap of the surrogate accepted at convergence, relative to its optimum.
constexpr double kGapTol = 1e-3;

bool energies_met(const Vec& bias, const Mat& h_ehu, const Vec& thresholds,
                  const PhysParams& params, double rel_tol) {
  for (Index k = 0; k < h_ehu.rows(); ++k) {
    const double e = harvested_energy(bias, h_ehu.row(k).transpose(), params);
    if (e < thresholds(k) * (1.0 - rel_tol)) return false;
  }
  return true;
}

bool bias_ok(const Vec& bias, const PhysParams& params) {
  return linear_range_violations(bias, params, kScoreTol).empty();
}

// Expansion points must stay strictly below I_H.
Vec clamp_expansion(const Vec& b, const PhysParams& params) {
  const double top = params.bias_max_IH - 1e-9 * (params.bias_max_IH - params.bias_min_IL);
  return b.cwiseMax(params.bias_mid()).cwiseMin(top);
}

// sum_k mu_k w_k(j) + sum_i d_i g_bar_i(j) + (1 - alpha) w(j) / omega
Vec marginal_cost(const DualState& duals, const LinearizedModel& model,
                  const PrecoderSet& precoder, const QosSpec& qos) {
  Vec t = precoder.G_bar.transpose() * duals.d;
  if (model.w_k.rows() > 0) t += model.w_k.transpose() * duals.mu;
  t += (1.0 - qos.alpha) / qos.omega * model.w;
  return t;
}

void fill_metrics(SolverReport& r, const QosSpec& qos, const ChannelMatrix& channel,
                  const PhysParams& params) {
  r.sum_rate = sum_rate(r.allocation.powers, params);
  r.total_energy = total_energy(r.allocation.bias, channel.ehu(), params);
  r.objective = qos.alpha * r.sum_rate + (1.0 - qos.alpha) / qos.omega * r.total_energy;
}

// Surrogate objective alpha R(P) + (1 - alpha)/omega (x - w^T P).
double surrogate_objective(const Vec& powers, const LinearizedModel& model, const QosSpec& qos,
                           const PhysParams& params) {
  return qos.alpha * sum_rate(powers, params) +
         (1.0 - qos.alpha) / qos.omega * (model.x - model.w.dot(powers));
}

// Lagrangian of the surrogate with the caps and energy rows priced; at the
// KKT power (the maximizer over P >= P_min) it bounds the surrogate optimum.
double lagrangian(const DualState& duals, const Vec& powers, const LinearizedModel& model,
                  const PrecoderSet& precoder, const QosSpec& qos, const PhysParams& params) {
  double l = surrogate_objective(powers, model, qos, params);
  l += duals.d.dot((params.power_cap() - (precoder.G_bar * powers).array()).matrix());
  if (model.w_k.rows() > 0) l += duals.mu.dot(model.m - model.w_k * powers);
  return l;
}

SolverReport infeasible_report(std::string why) {
  SolverReport r;
  r.status = SolverStatus::kInfeasible;
  r.infeasible_class = std::move(why);
  return r;
}

// With no IUs the only admissible point is P = {}, b = I_H 1.
SolverReport solve_without_iu(const ChannelMatrix& channel, const QosSpec& qos,
                              const PhysParams& params) {
  SolverReport r;
  r.allocation.bias = Vec::Constant(channel.num_aps(), params.bias_max_IH);
  r.allocation.powers = Vec::Zero(0);
  fill_metrics(r, qos, channel, params);
  r.converged = true;
  r.status = SolverStatus::kOk;
  return r;
}

void check_inputs(const ChannelMatrix& channel, const PrecoderSet& precoder, const QosSpec& qos,
                  const PhysParams& params) {
  params.validate();
  qos.validate();
  if (precoder.num_aps() != channel.num_aps() || precoder.num_iu() != channel.num_iu ||
      qos.rate_thresholds.size() != channel.num_iu ||
      qos.energy_thresholds.size() != channel.num_ehu()) {
    throw std::invalid_argument("channel, precoder and QoS dimensions disagree");
  }
}

}  // namespace

LinearizedModel linearize(const PrecoderSet& precoder, const Mat& h_ehu, const Vec& b_hat,
                          const QosSpec& qos, const PhysParams& params) {
  const double floor = params.bias_mid() * (1.0 - 1e-12);
  if (b_hat.size() != precoder.num_aps() || (b_hat.size() > 0 && b_hat.minCoeff() < floor)) {
    throw std::invalid_argument("expansion point outside the linear range");
  }
  LinearizedModel model;
  model.b_hat = b_hat;
  model.G_b = linearized_map(precoder, b_hat, params);

  const Index n_ehu = h_ehu.rows();
  const double rho_popt = params.conv_factor_rho * params.led_power_Popt;
  const double energy_gain = params.fill_factor * rho_popt * params.thermal_voltage_Vt;
  model.z.resize(n_ehu);
  model.x_k.resize(n_ehu, precoder.num_aps());
  model.m.resize(n_ehu);
  for (Index k = 0; k < n_ehu; ++k) {
    model.z(k) = std::log1p(rho_popt * h_ehu.row(k).dot(b_hat) / params.dark_current_I0);
    model.x_k.row(k) = energy_gain * model.z(k) * h_ehu.row(k);
    model.m(k) = params.bias_max_IH * model.x_k.row(k).sum() - qos.energy_thresholds(k);
  }
  model.x = params.bias_max_IH * model.x_k.sum();
  model.w_k = model.x_k * model.G_b;
  model.w = model.w_k.colwise().sum().transpose();
  return model;
}

std::optional<Vec> kkt_power(const DualState& duals, const LinearizedModel& model,
                             const PrecoderSet& precoder, const QosSpec& qos,
                             const PhysParams& params) {
  const double beta = rate_prefactor(params);
  const double gamma = snr_coefficient(params);
  const Vec p_min = min_powers(qos.rate_thresholds, params);
  const Vec cost = marginal_cost(duals, model, precoder, qos) - duals.lambda;
  Vec p(cost.size());
  for (Index j = 0; j < p.size(); ++j) {
    // the KKT denominator is -cost(j); it must be strictly negative
    if (!(cost(j) > 0.0)) return std::nullopt;
    p(j) = std::max(qos.alpha * beta / (std::numbers::ln2 * cost(j)) - 1.0 / gamma, p_min(j));
  }
  return p;
}

DualState update_duals(const DualState& state, const Vec& powers, const LinearizedModel& model,
                       const PrecoderSet& precoder, const QosSpec& qos, const PhysParams& params,
                       int iter) {
  if (powers.size() > 0 && powers.minCoeff() < 0.0) {
    throw std::invalid_argument("message powers must be nonnegative");
  }
  const double shrink = 1.0 / std::sqrt(static_cast<double>(std::max(iter, 1)));
  DualState next = state;
  if (model.w_k.rows() > 0) {
    const Vec energy_violation = model.w_k * powers - model.m;
    next.mu = (state.mu + state.step_mu * shrink * energy_violation).cwiseMax(0.0);
  }
  const Vec cap_violation = (precoder.G_bar * powers).array() - params.power_cap();
  next.d = (state.d + state.step_d * shrink * cap_violation).cwiseMax(0.0);

  const double beta = rate_prefactor(params);
  const double gamma = snr_coefficient(params);
  const Vec p_min = min_powers(qos.rate_thresholds, params);
  const Vec cost = marginal_cost(next, model, precoder, qos);
  next.lambda.resize(cost.size());
  for (Index j = 0; j < cost.size(); ++j) {
    const double at_floor = qos.alpha * beta / (std::numbers::ln2 * (p_min(j) + 1.0 / gamma));
    next.lambda(j) = std::max(0.0, cost(j) - at_floor);
  }
  return next;
}

DualState initial_duals(const LinearizedModel& model, const PrecoderSet& precoder,
                        const QosSpec& qos, const PhysParams& params, const SolverOptions& opts) {
  const double p_max = params.power_cap();
  const double scale =
      qos.alpha * rate_prefactor(params) * static_cast<double>(precoder.num_iu()) /
      std::numbers::ln2;
  const double d_ref = scale / p_max;
  const Index n_ehu = model.x_k.rows();
  double e_scale = 0.0;
  for (Index k = 0; k < n_ehu; ++k) {
    e_scale = std::max(e_scale, params.bias_max_IH * model.x_k.row(k).sum());
  }
  if (!(e_scale > 0.0)) e_scale = 1.0;

  DualState s;
  s.d = Vec::Constant(precoder.num_aps(), d_ref);
  s.mu = Vec::Zero(n_ehu);
  s.step_d = opts.step0 * d_ref / p_max;
  s.step_mu = opts.step0 * scale / (e_scale * e_scale);
  if (opts.randomize_duals) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (Index i = 0; i < s.d.size(); ++i) s.d(i) *= 0.5 + u(rng);
    for (Index k = 0; k < s.mu.size(); ++k) s.mu(k) = 0.1 * u(rng) * scale / e_scale;
  }
  // lambda from the tight rate floors at the starting mu, d
  const double beta = rate_prefactor(params);
  const double gamma = snr_coefficient(params);
  const Vec p_min = min_powers(qos.rate_thresholds, params);
  const Vec cost = marginal_cost(s, model, precoder, qos);
  s.lambda.resize(cost.size());
  for (Index j = 0; j < cost.size(); ++j) {
    const double at_floor = qos.alpha * beta / (std::numbers::ln2 * (p_min(j) + 1.0 / gamma));
    s.lambda(j) = std::max(0.0, cost(j) - at_floor);
  }
  return s;
}

Vec restore_feasible(const Vec& powers, const Vec& p_min, const PrecoderSet& precoder,
                     const Mat& h_ehu, const QosSpec& qos, const PhysParams& params) {
  const Vec step = (powers - p_min).cwiseMax(0.0);
  const Vec base_load = precoder.G_bar * p_min;
  const Vec step_load = precoder.G_bar * step;
  const double p_max = params.power_cap();
  double t = 1.0;
  for (Index i = 0; i < step_load.size(); ++i) {
    if (step_load(i) > 0.0) t = std::min(t, (p_max - base_load(i)) / step_load(i));
  }
  t = std::clamp(t * (1.0 - 1e-12), 0.0, 1.0);

  auto meets_energy = [&](double tt) {
    const Vec b = bias_from_powers(p_min + tt * step, precoder, params);
    return energies_met(b, h_ehu, qos.energy_thresholds, params, 0.0);
  };
  if (!meets_energy(t)) {
    // harvested energy falls monotonically in t
    double lo = 0.0;
    double hi = t;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (meets_energy(mid) ? lo : hi) = mid;
    }
    t = lo;
  }
  return p_min + t * step;
}

std::optional<std::string> infeasibility_certificate(const ChannelMatrix& channel,
                                                     const PrecoderSet& precoder,
                                                     const QosSpec& qos,
                                                     const PhysParams& params) {
  const Vec p_min = min_powers(qos.rate_thresholds, params);
  const Vec b = bias_from_powers(p_min, precoder, params);
  if (!linear_range_violations(b, params, 1e-12).empty()) return "rate";
  // P_min gives the largest bias, hence the most energy
  if (!energies_met(b, channel.ehu(), qos.energy_thresholds, params, 1e-12)) return "energy";
  return std::nullopt;
}

SolverReport solve_weighted(const ChannelMatrix& channel, const PrecoderSet& precoder,
                            const QosSpec& qos, const PhysParams& params,
                            const SolverOptions& opts) {
  check_inputs(channel, precoder, qos, params);
  if (qos.alpha == 0.0) return solve_max_energy(channel, precoder, qos, params, opts);
  if (auto why = infeasibility_certificate(channel, precoder, qos, params)) {
    return infeasible_report(*why);
  }
  if (channel.num_iu == 0) return solve_without_iu(channel, qos, params);

  const Mat h_ehu = channel.ehu();
  const Vec p_min = min_powers(qos.rate_thresholds, params);
  Vec b_hat = opts.initial_bias.value_or(Vec::Constant(channel.num_aps(), params.bias_mid()));
  LinearizedModel model = linearize(precoder, h_ehu, clamp_expansion(b_hat, params), qos, params);
  DualState duals = initial_duals(model, precoder, qos, params, opts);

  SolverReport best;
  best.status = SolverStatus::kMaxIter;
  double best_objective = -std::numeric_limits<double>::infinity();
  std::vector<TracePoint> trace;

  for (int n = 1; n <= opts.max_iter; ++n) {
    const std::optional<Vec> raw = kkt_power(duals, model, precoder, qos, params);
    if (!raw) throw std::logic_error("dual state admits unbounded power");

    Allocation candidate;
    candidate.powers = restore_feasible(*raw, p_min, precoder, h_ehu, qos, params);
    candidate.bias = bias_from_powers(candidate.powers, precoder, params);
    const double rate = sum_rate(candidate.powers, params);
    const double energy = total_energy(candidate.bias, h_ehu, params);
    const double objective = qos.alpha * rate + (1.0 - qos.alpha) / qos.omega * energy;
    const double change = (candidate.bias - b_hat).norm();
    trace.push_back({objective, rate, energy, change});
    if (objective > best_objective) {
      best_objective = objective;
      best.allocation = candidate;
    }
    best.iterations = n;
    // A still bias alone is not enough: the floors can pin P while the duals move.
    const double lower = surrogate_objective(candidate.powers, model, qos, params);
    const double upper = lagrangian(duals, *raw, model, precoder, qos, params);
    if (change < opts.tol_rel * b_hat.norm() && upper - lower <= kGapTol * std::abs(lower)) {
      best.converged = true;
      break;
    }

    b_hat = candidate.bias;
    model = linearize(precoder, h_ehu, clamp_expansion(b_hat, params), qos, params);

    DualState next = update_duals(duals, *raw, model, precoder, qos, params, n);
    for (int halving = 0; !kkt_power(next, model, precoder, qos, params); ++halving) {
      if (halving == kMaxStepHalvings) {
        throw std::logic_error("dual step halving failed to bound the power");
      }
      duals.step_d *= 0.5;
      duals.step_mu *= 0.5;
      next = update_duals(duals, *raw, model, precoder, qos, params, n);
    }
    duals = next;
  }

  best.trace = std::move(trace);
  best.status = best.converged ? SolverStatus::kOk : SolverStatus::kMaxIter;
  fill_metrics(best, qos, channel, params);
  return best;
}

SolverReport solve_max_energy(const ChannelMatrix& channel, const PrecoderSet& precoder,
                              const QosSpec& qos, const PhysParams& params,
                              const SolverOptions& opts) {
  check_inputs(channel, precoder, qos, params);
  if (auto why = infeasibility_certificate(channel, precoder, qos, params)) {
    return infeasible_report(*why);
  }
  if (channel.num_iu == 0) return solve_without_iu(channel, qos, params);

  const Mat h_ehu = channel.ehu();
  const Index n_iu = channel.num_iu;
  const Index n_aps = channel.num_aps();
  const Vec p_min = min_powers(qos.rate_thresholds, params);
  Vec b_hat = opts.initial_bias.value_or(Vec::Constant(n_aps, params.bias_mid()));

  SolverReport best;
  double best_objective = -std::numeric_limits<double>::infinity();
  bool have_best = false;
  std::vector<TracePoint> trace;

  for (int n = 1; n <= opts.max_iter; ++n) {
    const LinearizedModel model =
        linearize(precoder, h_ehu, clamp_expansion(b_hat, params), qos, params);

    // maximize x - w^T P over P >= P_min, w_k^T P <= m_k, g_bar_i^T P <= p_max
    LpProblem lp = LpProblem::nonnegative(n_iu);
    lp.objective_c = -model.w;
    lp.lower = p_min;
    lp.ineq_A.resize(model.w_k.rows() + n_aps, n_iu);
    lp.ineq_A << model.w_k, precoder.G_bar;
    lp.ineq_b.resize(model.w_k.rows() + n_aps);
    lp.ineq_b << model.m, Vec::Constant(n_aps, params.power_cap());
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::kOptimal) {
      if (!have_best) return infeasible_report("linearization");
      break;
    }

    Allocation candidate;
    candidate.powers = sol.x.cwiseMax(p_min);
    candidate.bias = bias_from_powers(candidate.powers, precoder, params);
    const double rate = sum_rate(candidate.powers, params);
    const double energy = total_energy(candidate.bias, h_ehu, params);
    const double objective = qos.alpha * rate + (1.0 - qos.alpha) / qos.omega * energy;
    const double change = (candidate.bias - b_hat).norm();
    trace.push_back({objective, rate, energy, change});
    if (bias_ok(candidate.bias, params) &&
        energies_met(candidate.bias, h_ehu, qos.energy_thresholds, params, kScoreTol) &&
        objective > best_objective) {
      best_objective = objective;
      best.allocation = candidate;
      have_best = true;
    }
    best.iterations = n;
    if (change <= opts.tol_rel * b_hat.norm()) {
      best.converged = true;
      break;
    }
    b_hat = candidate.bias;
  }

  if (!have_best) return infeasible_report("linearization");
  best.trace = std::move(trace);
  best.status = best.converged ? SolverStatus::kOk : SolverStatus::kMaxIter;
  fill_metrics(best, qos, channel, params);
  return best;
}

}  // namespace vlc
