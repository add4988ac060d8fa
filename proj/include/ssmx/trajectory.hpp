#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "ssmx/point_cloud.hpp"

namespace ssmx {

enum class MotionClass { Straight, TakeExit, UTurn };

const char* to_string(MotionClass c);
MotionClass motion_class_from_string(const std::string& name);

/// Planar vehicle path sampled on a uniform time grid.
struct Trajectory {
  Matrix positions;   // N x 2, meters
  Vector timestamps;  // N, seconds
  MotionClass motion_class = MotionClass::Straight;

  Index size() const { return positions.rows(); }
};

/// Reflection (about the x axis), then rotation, then translation.
struct RigidTransform {
  double rotation = 0.0;  // radians, [0, 2*pi)
  Eigen::Vector2d translation = Eigen::Vector2d::Zero();
  bool reflect = false;
};

/// Builds one of the three canonical motions, centered at its centroid.
/// Speeds: Straight holds 20 m/s, TakeExit ramps 20 -> 8 m/s through a
/// lane-change curve, UTurn ramps 15 -> 2 -> 15 m/s around the turn apex.
/// The seed drives a small (<= 0.5%) smooth speed modulation standing in
/// for measurement variation, so speed SSMs are never exactly degenerate.
Trajectory generate_trajectory(MotionClass motion_class, double duration,
                               double sample_rate, std::uint64_t seed);

Trajectory apply_rigid_transform(const Trajectory& traj, const RigidTransform& xf);

/// Magnitude of velocity per sample: central differences inside, one-sided
/// at the ends. Returns a 1-D point cloud on the trajectory's time grid.
TimeOrderedPointCloud speed_profile(const Trajectory& traj);

/// Rotation uniform in [0, 2*pi), translation uniform in the central
/// 2 km x 2 km of the sensor square, reflection by fair coin.
RigidTransform sample_rigid_transform(std::mt19937_64& rng);

}  // namespace ssmx
