// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vlc/numerics.hpp"

using namespace vlc;

TEST_CASE("LP single variable") {
  LpProblem lp = LpProblem::nonnegative(1);
  lp.objective_c << 1.0;
  lp.ineq_A = Mat::Ones(1, 1);
  lp.ineq_b = Vec::Ones(1);
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.x(0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("LP two variable textbook vertex") {
  LpProblem lp = LpProblem::nonnegative(2);
  lp.objective_c << 1.0, 1.0;
  lp.ineq_A.resize(2, 2);
  lp.ineq_A << 1, 2, 3, 1;
  lp.ineq_b.resize(2);
  lp.ineq_b << 4, 6;
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.x(0) == doctest::Approx(1.6).epsilon(1e-12));
  CHECK(s.x(1) == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(s.objective == doctest::Approx(2.8).epsilon(1e-12));
}

TEST_CASE("LP infeasible and unbounded") {
  LpProblem lp = LpProblem::nonnegative(1);
  lp.objective_c << 1.0;
  lp.ineq_A = Mat::Ones(1, 1);
  lp.ineq_b = Vec::Constant(1, -1.0);
  CHECK(solve_lp(lp).status == LpStatus::kInfeasible);

  LpProblem open = LpProblem::nonnegative(2);
  open.objective_c << 1.0, 0.0;
  open.ineq_A.resize(1, 2);
  open.ineq_A << -1.0, 1.0;
  open.ineq_b = Vec::Ones(1);
  CHECK(solve_lp(open).status == LpStatus::kUnbounded);

  LpProblem crossed = LpProblem::nonnegative(1);
  crossed.lower << 2.0;
  crossed.upper << 1.0;
  CHECK(solve_lp(crossed).status == LpStatus::kInfeasible);
}

TEST_CASE("LP respects shifted lower bounds and badly scaled rows") {
  // the power LPs mix 1e-16 lower bounds with 1e-3 caps and 1e6 coefficients
  LpProblem lp = LpProblem::nonnegative(2);
  lp.objective_c << 6e15, 6e15;
  lp.lower << 1.6e-16, 1.6e-16;
  lp.ineq_A.resize(2, 2);
  lp.ineq_A << 2e6, 1e6, 1e5, 4e5;
  lp.ineq_b = Vec::Constant(2, 3.6e-3);
  const LpSolution s = solve_lp(lp);
  const auto v = testing::lp_by_vertices(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  REQUIRE(v.feasible);
  CHECK(s.objective == doctest::Approx(v.objective).epsilon(1e-12));
  CHECK((s.x - v.x).cwiseAbs().maxCoeff() <= 1e-18);
}

TEST_CASE("LP degenerate vertex terminates") {
  LpProblem lp = LpProblem::nonnegative(2);
  lp.objective_c << 1.0, 1.0;
  lp.ineq_A.resize(4, 2);
  lp.ineq_A << 1, 1, 1, 1, 2, 2, 1, 0;
  lp.ineq_b.resize(4);
  lp.ineq_b << 1, 1, 2, 1;
  const LpSolution s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.objective == doctest::Approx(1.0));
}

TEST_CASE("LP agrees with vertex enumeration on random problems") {
  std::mt19937_64 rng(2026);
  int optimal = 0;
  for (int t = 0; t < 200; ++t) {
    const LpProblem lp = testing::random_lp(rng);
    const LpSolution s = solve_lp(lp);
    const auto v = testing::lp_by_vertices(lp);
    CAPTURE(t);
    REQUIRE((s.status == LpStatus::kOptimal) == v.feasible);
    if (!v.feasible) continue;
    ++optimal;
    CHECK(std::abs(s.objective - v.objective) <= 1e-8);
    CHECK(lp.objective_c.dot(s.x) == doctest::Approx(s.objective));
    CHECK(((lp.ineq_A * s.x - lp.ineq_b).array() <= 1e-9).all());
    CHECK(((s.x - lp.lower).array() >= -1e-12).all());
  }
  CHECK(optimal > 50);
}

TEST_CASE("LP rejects malformed input") {
  LpProblem lp = LpProblem::nonnegative(2);
  lp.ineq_A = Mat::Ones(1, 3);
  lp.ineq_b = Vec::Ones(1);
  CHECK_THROWS_AS(solve_lp(lp), std::invalid_argument);
  LpProblem nan = LpProblem::nonnegative(1);
  nan.objective_c << std::nan("");
  CHECK_THROWS_AS(solve_lp(nan), std::invalid_argument);
}

TEST_CASE("Newton root of x^2 - 4") {
  auto f = [](double x) { return x * x - 4.0; };
  auto df = [](double x) { return 2.0 * x; };
  CHECK(newton_root(f, df, 1.0, 1e-14, 0.0, 3.0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("Newton returns a root at the bracket end") {
  auto f = [](double x) { return x - 3.0; };
  auto df = [](double) { return 1.0; };
  CHECK(newton_root(f, df, 1.0, 1e-14, 0.0, 3.0) == 3.0);
  CHECK(newton_root(f, df, 4.0, 1e-14, 3.0, 5.0) == 3.0);
}

TEST_CASE("Newton errors") {
  auto f = [](double x) { return x * x + 1.0; };
  auto df = [](double x) { return 2.0 * x; };
  CHECK_THROWS_AS(newton_root(f, df, 0.5, 1e-12, 0.0, 1.0), NoRootBracketed);
  CHECK_THROWS_AS(newton_root(f, df, 0.5, 1e-12, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("Newton survives a zero derivative and flat start") {
  auto f = [](double x) { return std::atan(x - 1.0); };
  auto df = [](double x) { return 1.0 / (1.0 + (x - 1.0) * (x - 1.0)); };
  CHECK(newton_root(f, df, 40.0, 1e-14, -10.0, 50.0) == doctest::Approx(1.0).epsilon(1e-12));
  auto cubic = [](double x) { return x * x * x; };
  auto dcubic = [](double x) { return 3.0 * x * x; };
  CHECK(std::abs(newton_root(cubic, dcubic, 0.0 + 1e-3, 1e-30, -1.0, 2.0)) < 1e-9);
}

TEST_CASE("Newton matches bisection on equal-bias energy equations") {
  const PhysParams p;
  std::mt19937_64 rng(36);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const double sum_h = std::pow(10.0, -6.0 + 3.0 * u(rng));
    const double c1 = p.fill_factor * p.conv_factor_rho * p.led_power_Popt *
                      p.thermal_voltage_Vt * sum_h;
    const double c2 = p.conv_factor_rho * p.led_power_Popt * sum_h / p.dark_current_I0;
    const double x_true = 0.024 * (0.01 + 0.98 * u(rng));
    const double e_th = c1 * x_true * std::log1p(c2 * x_true);
    auto f = [&](double x) { return c1 * x * std::log1p(c2 * x) - e_th; };
    auto df = [&](double x) { return c1 * (std::log1p(c2 * x) + c2 * x / (1.0 + c2 * x)); };
    const double newton = newton_root(f, df, 0.006, 1e-15 * e_th, 0.0, 0.024);
    const double bis = testing::bisect(f, 0.0, 0.024);
    CHECK(std::abs(newton - bis) <= 1e-10);
    CHECK(std::abs(newton - x_true) <= 1e-10);
  }
}
