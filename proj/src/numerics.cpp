// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#include "vlc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace vlc {

LpProblem LpProblem::nonnegative(Index n) {
  LpProblem p;
  p.objective_c = Vec::Zero(n);
  p.ineq_A = Mat::Zero(0, n);
  p.ineq_b = Vec::Zero(0);
  p.lower = Vec::Zero(n);
  p.upper = Vec::Constant(n, std::numeric_limits<double>::infinity());
  return p;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "?";
}

namespace {

constexpr double kFeasibilityTol = 1e-9;
constexpr double kReducedCostTol = 1e-10;

// Canonical tableau; the last column holds the right-hand side.
class Tableau {
 public:
  Tableau(Mat rows, std::vector<Index> basis, Index n_structural, Index first_artificial)
      : t_(std::move(rows)),
        basis_(std::move(basis)),
        n_structural_(n_structural),
        first_artificial_(first_artificial) {}

  Index num_rows() const { return t_.rows(); }
  Index rhs_col() const { return t_.cols() - 1; }
  const std::vector<Index>& basis() const { return basis_; }
  double rhs(Index i) const { return t_(i, rhs_col()); }

  // Maximizes cost^T v over the tableau columns. Artificial columns may only
  // enter when `allow_artificial`. Returns false when unbounded.
  bool optimize(const Vec& cost, bool allow_artificial) {
    reduced_ = Vec::Zero(t_.cols());
    reduced_.head(cost.size()) = cost;
    for (Index i = 0; i < num_rows(); ++i) {
      reduced_ -= cost(basis_[static_cast<std::size_t>(i)]) * t_.row(i).transpose();
    }
    const Index entering_limit = allow_artificial ? rhs_col() : first_artificial_;
    int degenerate_run = 0;
    const Index max_pivots = 100 * (t_.rows() + t_.cols()) + 1000;
    for (Index iter = 0; iter < max_pivots; ++iter) {
      const bool bland = degenerate_run >= kBlandAfter;
      Index enter = -1;
      double best = kReducedCostTol;
      for (Index j = 0; j < entering_limit; ++j) {
        if (reduced_(j) > best) {
          enter = j;
          if (bland) break;
          best = reduced_(j);
        }
      }
      if (enter < 0) return true;

      Index leave = -1;
      double best_ratio = 0.0;
      for (Index i = 0; i < num_rows(); ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotTolerance) continue;
        const double ratio = std::max(0.0, rhs(i)) / a;
        // ties go to the smallest basic index
        const bool tie = leave >= 0 && std::abs(ratio - best_ratio) <= 1e-12;
        if (leave < 0 || (!tie && ratio < best_ratio) ||
            (tie && basis_[static_cast<std::size_t>(i)] <
                        basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      degenerate_run = best_ratio <= 1e-12 ? degenerate_run + 1 : 0;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex pivot limit exceeded");
  }

  void pivot(Index r, Index e) {
    t_.row(r) /= t_(r, e);
    for (Index i = 0; i < num_rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, e);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    reduced_ -= reduced_(e) * t_.row(r).transpose();
    basis_[static_cast<std::size_t>(r)] = e;
  }

  // Pivots basic artificials out on any usable structural or slack column.
  void expel_artificials() {
    for (Index i = 0; i < num_rows(); ++i) {
      if (basis_[static_cast<std::size_t>(i)] < first_artificial_) continue;
      for (Index j = 0; j < first_artificial_; ++j) {
        if (std::abs(t_(i, j)) > kPivotTolerance) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  Vec structural_values() const {
    Vec v = Vec::Zero(n_structural_);
    for (Index i = 0; i < num_rows(); ++i) {
      const Index b = basis_[static_cast<std::size_t>(i)];
      if (b < n_structural_) v(b) = std::max(0.0, rhs(i));
    }
    return v;
  }

 private:
  Mat t_;
  std::vector<Index> basis_;
  Index n_structural_;
  Index first_artificial_;
  Vec reduced_;
};

bool all_finite(const Vec& v) { return v.size() == 0 || v.allFinite(); }

}  // namespace

LpSolution solve_lp(const LpProblem& p) {
  const Index n = p.objective_c.size();
  if (p.ineq_A.cols() != n || p.ineq_A.rows() != p.ineq_b.size() || p.lower.size() != n ||
      p.upper.size() != n) {
    throw std::invalid_argument("LP dimensions are inconsistent");
  }
  if (!all_finite(p.objective_c) || !(p.ineq_A.size() == 0 || p.ineq_A.allFinite()) ||
      !all_finite(p.ineq_b) || !all_finite(p.lower) || p.upper.hasNaN()) {
    throw std::invalid_argument("LP data must be finite");
  }

  LpSolution out;
  out.x = p.lower;

  // Shift x = lower + y, then add finite upper bounds as rows.
  std::vector<Index> upper_rows;
  for (Index j = 0; j < n; ++j) {
    if (p.upper(j) < p.lower(j)) return out;  // infeasible
    if (std::isfinite(p.upper(j))) upper_rows.push_back(j);
  }
  const Index m = p.ineq_A.rows() + static_cast<Index>(upper_rows.size());
  Mat a = Mat::Zero(m, n);
  Vec r(m);
  a.topRows(p.ineq_A.rows()) = p.ineq_A;
  r.head(p.ineq_b.size()) = p.ineq_b - p.ineq_A * p.lower;
  for (std::size_t k = 0; k < upper_rows.size(); ++k) {
    const Index row = p.ineq_A.rows() + static_cast<Index>(k);
    a(row, upper_rows[k]) = 1.0;
    r(row) = p.upper(upper_rows[k]) - p.lower(upper_rows[k]);
  }

  // Equilibrate: rows to unit max-norm, then columns, then the rhs.
  std::vector<Index> kept;
  for (Index i = 0; i < m; ++i) {
    const double s = a.row(i).cwiseAbs().maxCoeff();
    if (s == 0.0) {
      const double scale = std::max(1.0, std::abs(i < p.ineq_b.size() ? p.ineq_b(i) : 0.0));
      if (r(i) < -kFeasibilityTol * scale) return out;  // 0 <= negative
      continue;
    }
    a.row(i) /= s;
    r(i) /= s;
    kept.push_back(i);
  }
  const Index mk = static_cast<Index>(kept.size());
  Mat ak(mk, n);
  Vec rk(mk);
  for (Index i = 0; i < mk; ++i) {
    ak.row(i) = a.row(kept[static_cast<std::size_t>(i)]);
    rk(i) = r(kept[static_cast<std::size_t>(i)]);
  }
  Vec col_scale = Vec::Ones(n);
  for (Index j = 0; j < n; ++j) {
    const double s = mk > 0 ? ak.col(j).cwiseAbs().maxCoeff() : 0.0;
    if (s > 0.0) {
      col_scale(j) = s;
      ak.col(j) /= s;
    }
  }
  double rhs_scale = mk > 0 ? rk.cwiseAbs().maxCoeff() : 0.0;
  if (rhs_scale == 0.0) rhs_scale = 1.0;
  rk /= rhs_scale;
  // y_j = rhs_scale * z_j / col_scale_j
  Vec cost = (p.objective_c.array() * rhs_scale / col_scale.array()).matrix();
  const double cmax = cost.size() > 0 ? cost.cwiseAbs().maxCoeff() : 0.0;
  if (cmax > 0.0) cost /= cmax;

  // Columns: structural | slack | artificial | rhs.
  Index n_art = 0;
  for (Index i = 0; i < mk; ++i) n_art += rk(i) < 0.0 ? 1 : 0;
  const Index first_art = n + mk;
  Mat t = Mat::Zero(mk, n + mk + n_art + 1);
  std::vector<Index> basis(static_cast<std::size_t>(mk));
  Index art = first_art;
  for (Index i = 0; i < mk; ++i) {
    if (rk(i) >= 0.0) {
      t.row(i).head(n) = ak.row(i);
      t(i, n + i) = 1.0;
      t(i, t.cols() - 1) = rk(i);
      basis[static_cast<std::size_t>(i)] = n + i;
    } else {
      t.row(i).head(n) = -ak.row(i);
      t(i, n + i) = -1.0;
      t(i, art) = 1.0;
      t(i, t.cols() - 1) = -rk(i);
      basis[static_cast<std::size_t>(i)] = art++;
    }
  }
  Tableau tab(std::move(t), std::move(basis), n, first_art);

  if (n_art > 0) {
    Vec phase1 = Vec::Zero(first_art + n_art);
    phase1.tail(n_art).setConstant(-1.0);
    tab.optimize(phase1, true);
    double infeasibility = 0.0;
    for (Index i = 0; i < tab.num_rows(); ++i) {
      if (tab.basis()[static_cast<std::size_t>(i)] >= first_art) infeasibility += tab.rhs(i);
    }
    if (infeasibility > kFeasibilityTol) return out;
    tab.expel_artificials();
  }

  Vec phase2 = Vec::Zero(first_art);
  phase2.head(n) = cost;
  if (!tab.optimize(phase2, false)) {
    out.status = LpStatus::kUnbounded;
    return out;
  }
  const Vec z = tab.structural_values();
  out.x = p.lower + (z.array() * rhs_scale / col_scale.array()).matrix();
  out.x = out.x.cwiseMin(p.upper);
  out.objective = p.objective_c.dot(out.x);
  out.status = LpStatus::kOptimal;
  return out;
}

double newton_root(const std::function<double(double)>& f,
                   const std::function<double(double)>& df, double x0, double tol, double lo,
                   double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("bracket must satisfy lo <= hi");
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (std::abs(f_lo) <= tol) return lo;
  if (std::abs(f_hi) <= tol) return hi;
  if (f_lo * f_hi > 0.0) throw NoRootBracketed("no root bracketed");

  const bool increasing = f_lo < 0.0;
  double x = std::clamp(x0, lo, hi);
  for (int iter = 0; iter < kNewtonMaxIter; ++iter) {
    const double fx = f(x);
    if (std::abs(fx) <= tol) return x;
    if ((fx < 0.0) == increasing) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
    }
    const double width = hi - lo;
    const double slope = df(x);
    double next = slope != 0.0 ? x - fx / slope : lo - 1.0;
    // Bisect when Newton leaves the bracket or would not halve it.
    if (!(next > lo && next < hi) || std::abs(next - x) > 0.5 * width) {
      next = lo + 0.5 * width;
    }
    if (next == x) return x;
    x = next;
  }
  throw NoConvergence("root finder did not converge");
}

}  // namespace vlc
