// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#include "vlc/geometry.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "vlc/config.hpp"

namespace vlc {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// Uniform draw on the open interval (0, hi).
double open_uniform(std::mt19937_64& rng, double hi) {
  std::uniform_real_distribution<double> dist(0.0, hi);
  double v = 0.0;
  do {
    v = dist(rng);
  } while (v <= 0.0);
  return v;
}

}  // namespace

void PhysParams::validate() const {
  require(bandwidth_W > 0, "bandwidth must be positive");
  require(pd_area_iu > 0 && pd_area_ehu > 0, "photodiode areas must be positive");
  require(optical_filter_gain > 0, "optical filter gain must be positive");
  require(half_intensity_angle > 0 && half_intensity_angle < 90,
          "half-intensity angle must lie in (0, 90) degrees");
  require(fov_semi_angle > 0 && fov_semi_angle < 90, "FoV semi-angle must lie in (0, 90) degrees");
  require(conv_factor_rho > 0, "conversion factor must be positive");
  require(refractive_index > 0, "refractive index must be positive");
  require(bias_min_IL >= 0 && bias_min_IL < bias_max_IH, "need 0 <= I_L < I_H");
  require(fill_factor > 0, "fill factor must be positive");
  require(led_power_Popt > 0, "LED power must be positive");
  require(thermal_voltage_Vt > 0, "thermal voltage must be positive");
  require(dark_current_I0 > 0, "dark current must be positive");
  require(noise_psd_N0 > 0, "noise PSD must be positive");
  require(wall_reflectance >= 0 && wall_reflectance <= 1, "wall reflectance must lie in [0, 1]");
  require(wall_patch_edge > 0, "wall patch edge must be positive");
}

double lambertian_order(double half_intensity_angle_deg) {
  return -1.0 / std::log2(std::cos(half_intensity_angle_deg * kDeg));
}

double concentrator_gain(double incidence_rad, const PhysParams& params) {
  const double fov = params.fov_semi_angle * kDeg;
  if (incidence_rad > fov) return 0.0;
  const double s = std::sin(fov);
  return params.refractive_index * params.refractive_index / (s * s);
}

std::vector<WallPatch> wall_patches(const Point& room_dims, double edge) {
  std::vector<WallPatch> patches;
  const double height = room_dims.z();
  const int n_z = static_cast<int>(std::ceil(height / edge - 1e-9));
  const double dz = height / n_z;

  // (axis the wall spans, fixed coordinate along the other axis, inward normal)
  struct Wall {
    int span_axis;
    double fixed;
    Point normal;
  };
  const Wall walls[] = {
      {1, 0.0, Point(1, 0, 0)},
      {1, room_dims.x(), Point(-1, 0, 0)},
      {0, 0.0, Point(0, 1, 0)},
      {0, room_dims.y(), Point(0, -1, 0)},
  };
  for (const Wall& wall : walls) {
    const double span = room_dims[wall.span_axis];
    const int n_s = static_cast<int>(std::ceil(span / edge - 1e-9));
    const double ds = span / n_s;
    const int fixed_axis = 1 - wall.span_axis;
    for (int s = 0; s < n_s; ++s) {
      for (int k = 0; k < n_z; ++k) {
        Point c;
        c[wall.span_axis] = (s + 0.5) * ds;
        c[fixed_axis] = wall.fixed;
        c.z() = (k + 0.5) * dz;
        patches.push_back({c, wall.normal, ds * dz, dz});
      }
    }
  }
  return patches;
}

Geometry build_geometry(const ScenarioConfig& config, std::uint64_t seed) {
  require(config.n_iu >= 0 && config.n_ehu >= 0, "user counts must be nonnegative");
  require(config.n_iu + config.n_ehu > 0, "scenario has no users");
  require(config.ap_rows > 0 && config.ap_cols > 0, "AP grid must be nonempty");
  const int n_aps = config.ap_rows * config.ap_cols;
  require(config.n_iu < n_aps, "zero forcing needs fewer IUs than APs");

  Geometry g;
  g.room_dims = config.room_dims;
  require(g.room_dims.minCoeff() > 0, "room dimensions must be positive");
  require(config.user_height >= 0 && config.user_height < g.room_dims.z(),
          "user height must lie below the ceiling");

  const double x0 = 0.5 * g.room_dims.x() - 0.5 * (config.ap_cols - 1) * config.ap_spacing;
  const double y0 = 0.5 * g.room_dims.y() - 0.5 * (config.ap_rows - 1) * config.ap_spacing;
  require(x0 >= 0 && y0 >= 0, "AP lattice does not fit the room");
  for (int r = 0; r < config.ap_rows; ++r) {
    for (int c = 0; c < config.ap_cols; ++c) {
      g.ap_positions.emplace_back(x0 + c * config.ap_spacing, y0 + r * config.ap_spacing,
                                  g.room_dims.z());
    }
  }

  std::mt19937_64 rng(seed);
  auto draw = [&] {
    const double x = open_uniform(rng, g.room_dims.x());
    const double y = open_uniform(rng, g.room_dims.y());
    return Point(x, y, config.user_height);
  };
  for (int j = 0; j < config.n_iu; ++j) g.iu_positions.push_back(draw());
  for (int k = 0; k < config.n_ehu; ++k) g.ehu_positions.push_back(draw());

  g.wall_patches = wall_patches(g.room_dims, config.phys.wall_patch_edge);
  return g;
}

double los_gain(const Point& ap, const Point& user, double pd_area, const PhysParams& params) {
  const Point v = ap - user;
  const double d2 = v.squaredNorm();
  const double d = std::sqrt(d2);
  if (d == 0.0) return 0.0;
  const double cos_theta = v.z() / d;
  if (cos_theta <= 0.0) return 0.0;
  const double theta = std::acos(std::min(1.0, cos_theta));
  const double conc = concentrator_gain(theta, params);
  if (conc == 0.0) return 0.0;
  const double m = lambertian_order(params.half_intensity_angle);
  return (m + 1.0) * pd_area / (2.0 * std::numbers::pi * d2) * std::pow(cos_theta, m) *
         params.optical_filter_gain * conc * cos_theta;
}

namespace {

// Patches nearer the receiver than this many edges are split 2x2.
constexpr double kNearFieldEdges = 2.0;
constexpr int kMaxPatchSplits = 6;

struct NlosTerms {
  const Point& ap;
  const Point& user;
  double m;
  double cot_fov;
  const PhysParams& params;

  // Points on a vertical wall are inside the receiver cone iff
  // z - z_user >= r cot(FoV), r the horizontal distance. Patches are clipped
  // to that part so the FoV edge does not depend on the patch size.
  double clipped(const WallPatch& p) const {
    Point center = p.center;
    double area = p.area;
    bool clip = p.height > 0.0;
    if (clip) {
      const double r = std::hypot(p.center.x() - user.x(), p.center.y() - user.y());
      const double z_lo = p.center.z() - 0.5 * p.height;
      const double z_hi = p.center.z() + 0.5 * p.height;
      const double z_vis = std::max(z_lo, user.z() + r * cot_fov);
      if (z_vis >= z_hi) return 0.0;
      center.z() = 0.5 * (z_vis + z_hi);
      area = p.area * (z_hi - z_vis) / p.height;
    }
    const Point to_patch = center - ap;
    const double d1_sq = to_patch.squaredNorm();
    const double d1 = std::sqrt(d1_sq);
    const double cos_phi = -to_patch.z() / d1;  // LED normal points down
    if (cos_phi <= 0.0) return 0.0;
    const double cos_a1 = -p.normal.dot(to_patch) / d1;
    if (cos_a1 <= 0.0) return 0.0;
    const Point to_user = user - center;
    const double d2_sq = to_user.squaredNorm();
    const double d2 = std::sqrt(d2_sq);
    const double cos_a2 = p.normal.dot(to_user) / d2;
    const double cos_theta = -to_user.z() / d2;  // PD normal points up
    if (cos_a2 <= 0.0 || cos_theta <= 0.0) return 0.0;
    // a clipped patch is inside the cone up to rounding
    const double conc =
        concentrator_gain(clip ? 0.0 : std::acos(std::min(1.0, cos_theta)), params);
    return area / (d1_sq * d2_sq) * std::pow(cos_phi, m) * cos_a1 * cos_a2 * conc * cos_theta;
  }

  double operator()(const WallPatch& p, int depth) const {
    if (p.height <= 0.0 || depth == kMaxPatchSplits) return clipped(p);
    const double width = p.area / p.height;
    if ((p.center - user).norm() >= kNearFieldEdges * std::max(width, p.height)) {
      return clipped(p);
    }
    const Point along(-p.normal.y(), p.normal.x(), 0.0);
    double sum = 0.0;
    for (double s : {-0.25, 0.25}) {
      for (double t : {-0.25, 0.25}) {
        const WallPatch q{p.center + s * width * along + Point(0, 0, t * p.height), p.normal,
                          0.25 * p.area, 0.5 * p.height};
        sum += (*this)(q, depth + 1);
      }
    }
    return sum;
  }
};

}  // namespace

double nlos_gain(const Point& ap, const Point& user, const std::vector<WallPatch>& patches,
                 double pd_area, const PhysParams& params) {
  if (params.wall_reflectance == 0.0) return 0.0;
  const double m = lambertian_order(params.half_intensity_angle);
  const double prefactor = (m + 1.0) * pd_area / (2.0 * std::numbers::pi) *
                           params.wall_reflectance * params.optical_filter_gain;
  const NlosTerms term{ap, user, m, 1.0 / std::tan(params.fov_semi_angle * kDeg), params};
  double sum = 0.0;
  for (const WallPatch& p : patches) sum += term(p, 0);
  return prefactor * sum;
}

ChannelMatrix channel_matrix(const Geometry& geometry, const PhysParams& params) {
  ChannelMatrix h;
  h.num_iu = geometry.num_iu();
  h.gains.resize(geometry.num_iu() + geometry.num_ehu(), geometry.num_aps());
  auto fill_row = [&](Index row, const Point& user, double area) {
    for (Index i = 0; i < geometry.num_aps(); ++i) {
      const Point& ap = geometry.ap_positions[static_cast<std::size_t>(i)];
      h.gains(row, i) = los_gain(ap, user, area, params) +
                        nlos_gain(ap, user, geometry.wall_patches, area, params);
    }
  };
  for (Index j = 0; j < geometry.num_iu(); ++j) {
    fill_row(j, geometry.iu_positions[static_cast<std::size_t>(j)], params.pd_area_iu);
  }
  for (Index k = 0; k < geometry.num_ehu(); ++k) {
    fill_row(h.num_iu + k, geometry.ehu_positions[static_cast<std::size_t>(k)],
             params.pd_area_ehu);
  }
  return h;
}

}  // namespace vlc
