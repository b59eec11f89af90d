// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#include "vlc/precoding.hpp"

#include <stdexcept>

namespace vlc {

PrecoderSet zf_precoder(const Mat& h_iu) {
  if (h_iu.rows() >= h_iu.cols()) {
    throw std::invalid_argument("zero forcing needs fewer IUs than APs");
  }
  PrecoderSet out;
  if (h_iu.rows() == 0) {
    out.G = Mat::Zero(h_iu.cols(), 0);
    out.G_bar = out.G;
    return out;
  }
  const Mat gram = h_iu * h_iu.transpose();
  const Eigen::SelfAdjointEigenSolver<Mat> eig(gram, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > kMaxGramCondition) {
    throw DegenerateChannel("degenerate channel: IU Gram matrix is singular or ill-conditioned");
  }
  const Eigen::LLT<Mat> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw DegenerateChannel("degenerate channel: Cholesky factorization failed");
  }
  out.G = llt.solve(h_iu).transpose();
  out.G_bar = out.G.cwiseAbs2();
  return out;
}

Mat linearized_map(const PrecoderSet& precoder, const Vec& b_hat, const PhysParams& params) {
  if (b_hat.size() != precoder.num_aps()) {
    throw std::invalid_argument("expansion point has the wrong length");
  }
  const double popt_sq = params.led_power_Popt * params.led_power_Popt;
  Mat g_b(precoder.G_bar.rows(), precoder.G_bar.cols());
  for (Index i = 0; i < g_b.rows(); ++i) {
    const double headroom = params.bias_max_IH - b_hat(i);
    if (!(headroom > 0.0)) {
      throw std::domain_error("linearization singular: expansion bias reaches I_H");
    }
    g_b.row(i) = precoder.G_bar.row(i) / (popt_sq * headroom);
  }
  return g_b;
}

}  // namespace vlc
