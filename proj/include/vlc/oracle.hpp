// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#pragma once

#include <cstdint>

#include "vlc/geometry.hpp"
#include "vlc/precoding.hpp"
#include "vlc/utility.hpp"

namespace vlc {

struct OracleResult {
  Allocation allocation;
  double objective = 0.0;
  bool feasible = false;
  std::int64_t evaluated = 0;  // grid points visited
};

/// Exhaustive search over message powers for at most two IUs. Each axis is a
/// log-spaced grid from P_j,min to the largest P_j that keeps every AP under
/// its power cap with the other users at their minimum; a zero minimum
/// contributes the point 0 followed by a log grid starting 9 decades below
/// the top. Bias follows from the powers exactly. The constraint checks here
/// are written independently of utility.hpp.
///
/// `alpha` overrides qos.alpha. Throws std::invalid_argument for more than
/// two IUs or fewer than two points per axis.
OracleResult grid_search(const ChannelMatrix& channel, const PrecoderSet& precoder,
                         const QosSpec& qos, const PhysParams& params, double alpha,
                         int grid_points_per_dim);

}  // namespace vlc
