// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vlc/geometry.hpp"
#include "vlc/precoding.hpp"
#include "vlc/utility.hpp"

namespace vlc {

/// Convex surrogate of the energy terms around the expansion point b_hat.
/// Harvested energy of EHU k is replaced by x_k^T (I_H 1 - G_b P), with the
/// logarithm frozen at b_hat.
struct LinearizedModel {
  Vec b_hat;  // N_A
  Mat G_b;    // N_A x N_u1
  Vec z;      // N_u2, ln(1 + rho P_opt h_k^T b_hat / I0)
  Mat x_k;    // N_u2 x N_A, row k = x_k^T
  double x = 0.0;
  Vec w;    // N_u1, sum of the w_k
  Mat w_k;  // N_u2 x N_u1, row k = x_k^T G_b
  Vec m;    // N_u2, I_H x_k^T 1 - E_th,k
};

/// Multipliers of the rate floors (lambda), the linearized energy
/// constraints (mu) and the per-AP power caps (d), plus the base subgradient
/// steps. The step used at iteration n is step / sqrt(n).
struct DualState {
  Vec lambda;
  Vec mu;
  Vec d;
  double step_mu = 0.0;
  double step_d = 0.0;
};

enum class SolverStatus { kOk, kInfeasible, kMaxIter };

const char* to_string(SolverStatus status);

/// One outer iteration, measured at the iterate's feasible point.
struct TracePoint {
  double objective;
  double sum_rate;
  double total_energy;
  double bias_change;  // ||b - b_hat||_2
};

struct SolverReport {
  Allocation allocation;
  double objective = 0.0;
  double sum_rate = 0.0;
  double total_energy = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<TracePoint> trace;
  SolverStatus status = SolverStatus::kInfeasible;
  /// "rate", "energy" or "linearization" when status is kInfeasible.
  std::string infeasible_class;

  bool feasible() const { return status != SolverStatus::kInfeasible; }
};

struct SolverOptions {
  // stop when ||b - b_hat|| < tol_rel ||b_hat|| and the surrogate's duality
  // gap is within 0.1%
  double tol_rel = 1e-6;
  int max_iter = 200;
  double step0 = 0.5;
  bool randomize_duals = false;
  std::uint64_t seed = 0;
  std::optional<Vec> initial_bias;  // default: the linear-range midpoint
};

/// Throws std::invalid_argument if b_hat leaves [(I_H+I_L)/2, I_H) and
/// std::domain_error if some b_hat_i == I_H.
LinearizedModel linearize(const PrecoderSet& precoder, const Mat& h_ehu, const Vec& b_hat,
                          const QosSpec& qos, const PhysParams& params);

/// Stationary point of the Lagrangian of the convexified problem, floored at
/// the rate minimum. Empty optional when some denominator is nonnegative,
/// i.e. the duals leave that user's power unbounded.
std::optional<Vec> kkt_power(const DualState& duals, const LinearizedModel& model,
                             const PrecoderSet& precoder, const QosSpec& qos,
                             const PhysParams& params);

/// One projected subgradient step on mu and d (iteration `iter` >= 1), then
/// lambda from the tight rate-floor condition using the new mu and d.
DualState update_duals(const DualState& state, const Vec& powers, const LinearizedModel& model,
                       const PrecoderSet& precoder, const QosSpec& qos, const PhysParams& params,
                       int iter);

/// Starting multipliers: d_i = alpha beta N_u1 / (ln2 p_max), which keeps the
/// first KKT power vector inside every AP power cap; mu = 0.
DualState initial_duals(const LinearizedModel& model, const PrecoderSet& precoder,
                        const QosSpec& qos, const PhysParams& params, const SolverOptions& opts);

/// Pulls P toward P_min along the segment P_min + t (P - P_min) until every
/// power cap and exact energy constraint holds. Requires P >= P_min and a
/// feasible P_min.
Vec restore_feasible(const Vec& powers, const Vec& p_min, const PrecoderSet& precoder,
                     const Mat& h_ehu, const QosSpec& qos, const PhysParams& params);

/// Weighted-sum maximization by inner convexification and dual ascent.
/// Returns the best feasible iterate. alpha == 0 is delegated to
/// solve_max_energy.
SolverReport solve_weighted(const ChannelMatrix& channel, const PrecoderSet& precoder,
                            const QosSpec& qos, const PhysParams& params,
                            const SolverOptions& opts = {});

/// Harvested-energy maximization: a sequence of LPs over the linearized
/// model, refreshing the expansion point with the exact bias each time.
SolverReport solve_max_energy(const ChannelMatrix& channel, const PrecoderSet& precoder,
                              const QosSpec& qos, const PhysParams& params,
                              const SolverOptions& opts = {});

/// Empty when the instance can be feasible; otherwise "rate" (the rate
/// floors alone break the bias range) or "energy" (even the largest
/// reachable bias misses an energy threshold).
std::optional<std::string> infeasibility_certificate(const ChannelMatrix& channel,
                                                     const PrecoderSet& precoder,
                                                     const QosSpec& qos,
                                                     const PhysParams& params);

}  // namespace vlc
