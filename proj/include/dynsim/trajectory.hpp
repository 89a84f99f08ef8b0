#pragma once

#include <string>
#include <vector>

#include "dynsim/mesh.hpp"

namespace dynsim {

struct StampedPose {
  double t = 0;  // seconds
  Pose pose;
};

/// Time-ordered pose sequence (strictly increasing stamps).
struct Trajectory {
  std::vector<StampedPose> poses;

  void push(double t, const Pose& pose);  // enforces monotonicity
  bool empty() const { return poses.empty(); }
  size_t size() const { return poses.size(); }
  double begin_time() const { return poses.front().t; }
  double end_time() const { return poses.back().t; }

  /// Interpolated pose (lerp + slerp), clamped at both ends.
  Pose sample(double t) const;
};

/// TUM text format: "timestamp tx ty tz qx qy qz qw" per line, '#'
/// comments. Stamps must increase strictly.
Trajectory load_tum(const std::string& path);
void save_tum(const Trajectory& traj, const std::string& path);

}  // namespace dynsim
