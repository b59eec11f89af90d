// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#pragma once

#include <functional>
#include <limits>
#include <stdexcept>

#include "vlc/types.hpp"

namespace vlc {

/// maximize c^T x  s.t.  A x <= b,  lower <= x <= upper.
/// `upper` entries may be +infinity; `lower` must be finite.
struct LpProblem {
  Vec objective_c;
  Mat ineq_A;
  Vec ineq_b;
  Vec lower;
  Vec upper;

  /// n variables in [0, inf) and no rows yet.
  static LpProblem nonnegative(Index n);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus status);

struct LpSolution {
  Vec x;
  double objective = 0.0;
  LpStatus status = LpStatus::kInfeasible;
};

inline constexpr double kPivotTolerance = 1e-10;
/// Consecutive degenerate pivots before switching to Bland's rule.
inline constexpr int kBlandAfter = 50;

/// Dense two-phase primal simplex. Rows and columns are equilibrated before
/// pivoting, so tolerances act on O(1) quantities regardless of the
/// physical units. Infeasibility and unboundedness are reported through the
/// status; malformed input throws std::invalid_argument.
LpSolution solve_lp(const LpProblem& problem);

class NoRootBracketed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kNewtonMaxIter = 100;

/// Newton iteration on [lo, hi] that falls back to bisection whenever a step
/// leaves the current bracket or fails to shrink it. Returns x with
/// |f(x)| <= tol.
double newton_root(const std::function<double(double)>& f,
                   const std::function<double(double)>& df, double x0, double tol, double lo,
                   double hi);

}  // namespace vlc
