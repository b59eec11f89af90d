// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#pragma once

#include "vlc/iterative.hpp"

namespace vlc {

/// Smallest equal bias meeting every EHU threshold, floored at the
/// linear-range midpoint. Throws InfeasibleError("energy") when some EHU
/// would need more than I_H.
Vec min_equal_bias(const Mat& h_ehu, const QosSpec& qos, const PhysParams& params);

/// Largest equal bias leaving room for the minimum message powers,
/// min(I_H, I_H - sqrt(max_i g_bar_i^T P_min) / P_opt) on every AP.
Vec max_equal_bias(const PrecoderSet& precoder, const QosSpec& qos, const PhysParams& params);

/// Equal-bias baseline: blend the two equal biases by alpha, then pick the
/// message powers with an LP maximizing sum_j gamma P_j under the per-AP
/// headroom P_opt^2 (I_H - b)^2. At alpha == 0 the powers are P_min.
SolverReport solve_baseline(const ChannelMatrix& channel, const PrecoderSet& precoder,
                            const QosSpec& qos, const PhysParams& params);

}  // namespace vlc
