// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#pragma once

#include "vlc/types.hpp"

namespace vlc {

/// Zero-forcing precoder over the IU sub-channel.
struct PrecoderSet {
  Mat G;      // N_A x N_u1
  Mat G_bar;  // entrywise squares of G; row i maps message powers to AP i's signal power

  Index num_aps() const { return G.rows(); }
  Index num_iu() const { return G.cols(); }
};

/// Gram condition number above which zero forcing is refused.
inline constexpr double kMaxGramCondition = 1e12;

/// G = H^T (H H^T)^{-1} through a Cholesky solve of the Gram system.
/// Throws std::invalid_argument when N_u1 >= N_A and DegenerateChannel when
/// the Gram matrix is singular or worse conditioned than kMaxGramCondition.
/// An empty H (no IUs) yields an N_A x 0 precoder.
PrecoderSet zf_precoder(const Mat& h_iu);

/// Linearized power-to-bias map around the expansion point `b_hat`:
/// row i is G_bar row i divided by P_opt^2 (I_H - b_hat_i), so that
/// b ~= I_H 1 - G_b P with equality when b == b_hat. Rows with an all-zero
/// G_bar row stay zero. Throws std::domain_error if some b_hat_i >= I_H.
Mat linearized_map(const PrecoderSet& precoder, const Vec& b_hat, const PhysParams& params);

}  // namespace vlc
