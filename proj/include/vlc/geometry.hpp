// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#pragma once

#include <cstdint>
#include <vector>

#include "vlc/types.hpp"

namespace vlc {

struct ScenarioConfig;

struct WallPatch {
  Point center;
  Point normal;  // unit, pointing into the room
  double area;
  double height = 0.0;  // vertical extent; 0 evaluates the patch at its center only
};

struct Geometry {
  Point room_dims;  // x, y, z (z = ceiling height)
  std::vector<Point> ap_positions;
  std::vector<Point> iu_positions;
  std::vector<Point> ehu_positions;
  std::vector<WallPatch> wall_patches;

  Index num_aps() const { return static_cast<Index>(ap_positions.size()); }
  Index num_iu() const { return static_cast<Index>(iu_positions.size()); }
  Index num_ehu() const { return static_cast<Index>(ehu_positions.size()); }
};

/// Optical gains, one row per user: IU rows first, then EHU rows.
struct ChannelMatrix {
  Mat gains;
  Index num_iu = 0;

  Index num_aps() const { return gains.cols(); }
  Index num_ehu() const { return gains.rows() - num_iu; }
  auto iu() const { return gains.topRows(num_iu); }
  auto ehu() const { return gains.bottomRows(gains.rows() - num_iu); }
};

/// Lambertian order m = -1 / log2(cos(theta_1/2)).
double lambertian_order(double half_intensity_angle_deg);

/// Concentrator gain n^2 / sin^2(fov) inside the field of view, 0 outside.
double concentrator_gain(double incidence_rad, const PhysParams& params);

/// Ceiling AP lattice, i.i.d. uniform user drops at user height, and the
/// wall discretization. Deterministic in `seed`.
Geometry build_geometry(const ScenarioConfig& config, std::uint64_t seed);

/// Wall patches of (at most) `edge` meters tiling the four side walls.
std::vector<WallPatch> wall_patches(const Point& room_dims, double edge);

/// Line-of-sight DC gain. LED faces down, photodiode faces up, so the
/// irradiance and incidence angles coincide.
double los_gain(const Point& ap, const Point& user, double pd_area, const PhysParams& params);

/// First-reflection DC gain summed over the wall patches.
double nlos_gain(const Point& ap, const Point& user, const std::vector<WallPatch>& patches,
                 double pd_area, const PhysParams& params);

ChannelMatrix channel_matrix(const Geometry& geometry, const PhysParams& params);

}  // namespace vlc
