// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace vlc::testing {

std::optional<Vec> gauss_solve(Mat a, Vec b) {
  const Index n = a.rows();
  const double scale = n > 0 ? std::max(a.cwiseAbs().maxCoeff(), 1e-300) : 1.0;
  for (Index k = 0; k < n; ++k) {
    Index p = k;
    for (Index i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    }
    if (std::abs(a(p, k)) <= 1e-12 * scale) return std::nullopt;
    a.row(k).swap(a.row(p));
    std::swap(b(k), b(p));
    for (Index i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (Index j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b(i) -= f * b(k);
    }
  }
  Vec x(n);
  for (Index i = n - 1; i >= 0; --i) {
    double s = b(i);
    for (Index j = i + 1; j < n; ++j) s -= a(i, j) * x(j);
    x(i) = s / a(i, i);
  }
  return x;
}

VertexResult lp_by_vertices(const LpProblem& lp) {
  const Index n = lp.objective_c.size();
  // Stack every constraint as row . x <= rhs.
  std::vector<Vec> rows;
  std::vector<double> rhs;
  for (Index i = 0; i < lp.ineq_A.rows(); ++i) {
    rows.push_back(lp.ineq_A.row(i).transpose());
    rhs.push_back(lp.ineq_b(i));
  }
  for (Index j = 0; j < n; ++j) {
    Vec e = Vec::Zero(n);
    e(j) = -1.0;
    rows.push_back(e);
    rhs.push_back(-lp.lower(j));
    if (std::isfinite(lp.upper(j))) {
      e(j) = 1.0;
      rows.push_back(e);
      rhs.push_back(lp.upper(j));
    }
  }
  const std::size_t m = rows.size();
  VertexResult best;
  std::vector<std::size_t> pick(static_cast<std::size_t>(n));
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t depth,
                                                              std::size_t start) {
    if (depth == pick.size()) {
      Mat a(n, n);
      Vec b(n);
      for (Index r = 0; r < n; ++r) {
        a.row(r) = rows[pick[static_cast<std::size_t>(r)]].transpose();
        b(r) = rhs[pick[static_cast<std::size_t>(r)]];
      }
      const auto x = gauss_solve(a, b);
      if (!x) return;
      for (std::size_t i = 0; i < m; ++i) {
        const double tol = 1e-9 * (1.0 + std::abs(rhs[i]) + rows[i].cwiseAbs().sum() *
                                                                  x->cwiseAbs().maxCoeff());
        if (rows[i].dot(*x) > rhs[i] + tol) return;
      }
      const double obj = lp.objective_c.dot(*x);
      if (!best.feasible || obj > best.objective) {
        best.feasible = true;
        best.objective = obj;
        best.x = *x;
      }
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      pick[depth] = i;
      choose(depth + 1, i + 1);
    }
  };
  choose(0, 0);
  return best;
}

LpProblem random_lp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 4), rows(0, 8);
  std::uniform_real_distribution<double> u(-1.0, 1.0), r01(0.0, 1.0);
  const Index n = dim(rng);
  const Index m = rows(rng);
  LpProblem lp = LpProblem::nonnegative(n);
  for (Index j = 0; j < n; ++j) {
    lp.objective_c(j) = u(rng);
    lp.lower(j) = r01(rng) < 0.5 ? 0.0 : u(rng);
    lp.upper(j) = r01(rng) < 0.6 ? lp.lower(j) + 3.0 * r01(rng)
                                 : std::numeric_limits<double>::infinity();
  }
  bool open = !lp.upper.allFinite();
  lp.ineq_A.resize(m + (open ? 1 : 0), n);
  lp.ineq_b.resize(m + (open ? 1 : 0));
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) lp.ineq_A(i, j) = u(rng);
    lp.ineq_b(i) = 2.5 * r01(rng) - 0.5;
  }
  if (open) {
    // caps the sum so the feasible set stays bounded
    lp.ineq_A.row(m).setOnes();
    lp.ineq_b(m) = 1.0 + 4.0 * r01(rng);
  }
  return lp;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, int iters) {
  double f_lo = f(lo);
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if ((f_mid < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<std::string> audit(const Allocation& alloc, const Mat& h_iu, const Mat& h_ehu,
                               const Mat& g, const QosSpec& qos, const PhysParams& params,
                               double rel_tol, Coupling coupling) {
  std::vector<std::string> bad;
  const double pi = std::numbers::pi;
  const double e = std::numbers::e;
  const double w = params.bandwidth_W;
  const double rho = params.conv_factor_rho;
  const double popt = params.led_power_Popt;
  const double ih = params.bias_max_IH;
  const double il = params.bias_min_IL;
  const Vec& b = alloc.bias;
  const Vec& p = alloc.powers;

  if (b.size() != g.rows() || p.size() != h_iu.rows()) {
    bad.push_back("shape");
    return bad;
  }
  for (Index j = 0; j < p.size(); ++j) {
    if (!(p(j) >= 0.0)) bad.push_back("negative power " + std::to_string(j));
    const double snr =
        e * rho * rho * popt * popt * p(j) / (2.0 * pi * w * params.noise_psd_N0);
    const double rate = 0.5 * w * std::log(1.0 + snr) / std::log(2.0);
    if (rate < qos.rate_thresholds(j) * (1.0 - rel_tol)) {
      bad.push_back("rate " + std::to_string(j));
    }
  }
  for (Index k = 0; k < h_ehu.rows(); ++k) {
    double dot = 0.0;
    for (Index i = 0; i < b.size(); ++i) dot += h_ehu(k, i) * b(i);
    const double current = rho * popt * dot;
    const double harvested = params.fill_factor * params.thermal_voltage_Vt * current *
                             std::log(1.0 + current / params.dark_current_I0);
    if (harvested < qos.energy_thresholds(k) * (1.0 - rel_tol)) {
      bad.push_back("energy " + std::to_string(k));
    }
  }
  // H_IU G = I: each IU sees only its own message.
  const Mat hg = h_iu * g;
  for (Index r = 0; r < hg.rows(); ++r) {
    for (Index c = 0; c < hg.cols(); ++c) {
      if (std::abs(hg(r, c) - (r == c ? 1.0 : 0.0)) > 1e-6) bad.push_back("zero forcing");
    }
  }
  const double slack = rel_tol * ih;
  for (Index i = 0; i < b.size(); ++i) {
    // b - A >= I_L with A = I_H - b, and b <= I_H
    if (b(i) > ih + slack || 2.0 * b(i) - ih < il - 2.0 * slack) {
      bad.push_back("bias box " + std::to_string(i));
    }
    double load = 0.0;
    for (Index j = 0; j < p.size(); ++j) load += g(i, j) * g(i, j) * p(j);
    const double amplitude = std::sqrt(load) / popt;
    const double headroom = ih - b(i);
    const bool ok = coupling == Coupling::kEquality
                        ? std::abs(amplitude - headroom) <= rel_tol * ih
                        : amplitude <= headroom + rel_tol * ih;
    if (!ok) bad.push_back("coupling " + std::to_string(i));
  }
  return bad;
}

ScenarioConfig tiny_config(int n_iu, int n_ehu) {
  ScenarioConfig cfg;
  cfg.ap_rows = 2;
  cfg.ap_cols = 2;
  cfg.n_iu = n_iu;
  cfg.n_ehu = n_ehu;
  cfg.phys.fov_semi_angle = cfg.fov_list.front();
  return cfg;
}

}  // namespace vlc::testing
