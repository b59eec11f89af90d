// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vlc/experiment.hpp"
#include "vlc/precoding.hpp"

using namespace vlc;

namespace {

Mat random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = u(rng);
  }
  return m;
}

}  // namespace

TEST_CASE("ZF of an identity padded with zeros") {
  Mat h = Mat::Zero(2, 4);
  h(0, 0) = 1.0;
  h(1, 1) = 1.0;
  const PrecoderSet p = zf_precoder(h);
  Mat expected = Mat::Zero(4, 2);
  expected(0, 0) = 1.0;
  expected(1, 1) = 1.0;
  CHECK((p.G - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((p.G_bar - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("ZF matches a Gaussian-elimination solve") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat h = random_matrix(rng, 2, 4);
    const PrecoderSet p = zf_precoder(h);
    const Mat gram = h * h.transpose();
    Mat x(2, 4);
    for (Index c = 0; c < 4; ++c) {
      const auto col = testing::gauss_solve(gram, h.col(c));
      REQUIRE(col.has_value());
      x.col(c) = *col;
    }
    CHECK((p.G - x.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("ZF identity on sampled room channels") {
  const ScenarioConfig cfg;
  for (int t = 0; t < 30; ++t) {
    const Instance inst = build_instance(cfg, 1000 + static_cast<std::uint64_t>(t));
    const Mat hg = inst.channel.iu() * inst.precoder.G;
    CHECK((hg - Mat::Identity(hg.rows(), hg.cols())).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((inst.precoder.G_bar - inst.precoder.G.cwiseAbs2()).norm() == 0.0);
  }
}

TEST_CASE("ZF rejects degenerate and oversized channels") {
  Mat h(2, 4);
  h << 1, 2, 3, 4, 2, 4, 6, 8;
  CHECK_THROWS_AS(zf_precoder(h), DegenerateChannel);
  CHECK_THROWS_AS(zf_precoder(Mat::Ones(4, 4)), std::invalid_argument);
  const PrecoderSet empty = zf_precoder(Mat::Zero(0, 4));
  CHECK(empty.G.rows() == 4);
  CHECK(empty.G.cols() == 0);
}

TEST_CASE("linearized map at the midpoint bias") {
  PhysParams params;
  Mat h = Mat::Zero(1, 4);
  h(0, 2) = 1.0;
  const PrecoderSet p = zf_precoder(h);
  const Vec mid = Vec::Constant(4, params.bias_mid());
  const Mat g_b = linearized_map(p, mid, params);
  // row scale 1 / (P_opt^2 (I_H - b_hat)) = 1 / (100 * 0.006)
  CHECK(g_b(2, 0) == doctest::Approx(1.0 / (100.0 * 0.006)).epsilon(1e-14));
  CHECK(g_b(0, 0) == 0.0);
}

TEST_CASE("linearized map diverges toward I_H and rejects it") {
  PhysParams params;
  Mat h = Mat::Zero(1, 4);
  h(0, 0) = 1.0;
  const PrecoderSet p = zf_precoder(h);
  double prev = 0.0;
  for (double gap : {1e-3, 1e-5, 1e-7, 1e-9}) {
    const Mat g_b = linearized_map(p, Vec::Constant(4, params.bias_max_IH - gap), params);
    CHECK(g_b(0, 0) > prev);
    prev = g_b(0, 0);
  }
  CHECK_THROWS_AS(linearized_map(p, Vec::Constant(4, params.bias_max_IH), params),
                  std::domain_error);
}

TEST_CASE("linearized map reproduces the componentwise quotient") {
  PhysParams params;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const PrecoderSet p = zf_precoder(random_matrix(rng, 3, 6));
  Vec b_hat(6), power(3);
  for (Index i = 0; i < 6; ++i) b_hat(i) = 0.006 + 0.0059 * u(rng);
  for (Index j = 0; j < 3; ++j) power(j) = 1e-4 * u(rng);
  const Vec lhs = linearized_map(p, b_hat, params) * power;
  for (Index i = 0; i < 6; ++i) {
    const double rhs = p.G_bar.row(i).dot(power) / (100.0 * (0.012 - b_hat(i)));
    CHECK(lhs(i) == doctest::Approx(rhs).epsilon(1e-13));
  }
}
