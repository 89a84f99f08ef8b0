#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dynsim/mesh.hpp"

namespace dynsim {

struct CameraIntrinsics {
  int width = 640;
  int height = 480;
  double hfov_deg = 86.0;
  double vfov_deg = 57.0;

  double fx() const;
  double fy() const;
  double cx() const { return width / 2.0; }
  double cy() const { return height / 2.0; }
  /// Camera-frame ray through the center of pixel (u, v); z = 1, so the
  /// ray parameter of a hit is its z-depth directly.
  Vec3 pixel_ray(int u, int v) const;
};

/// Optical frame: +z forward, +x right, +y down.
struct CameraConfig {
  std::string name;  // channel prefix for extra cameras; empty for built-ins
  CameraIntrinsics intrinsics;
  Pose mount;        // body -> optical

  /// z_optical = +x body, x_optical = -y body, y_optical = -z body.
  static Pose forward_mount(const Vec3& offset = Vec3(0.1, 0, 0));
};

enum class Channel : uint8_t {
  Clock = 0,
  Imu,
  Tf,
  Joints,
  CamPose,
  Odom,
  Rgb,
  Depth,
  Start,
};

struct ChannelRates {
  uint32_t clock = 240;
  uint32_t imu = 240;
  uint32_t tf = 120;
  uint32_t joints = 120;
  uint32_t cam_pose = 60;
  uint32_t odom = 60;
  uint32_t rgb = 30;
  uint32_t depth = 30;

  uint32_t of(Channel c) const;
};

struct SimConfig {
  uint32_t physics_hz = 240;   // dt = 1/240 s
  double bootstrap_s = 1.0;
  double duration_s = 60.0;
  ChannelRates rates;
  CameraConfig cam_low;        // 640x480 default
  CameraConfig cam_high;       // 1920x1080 default, same FOV
  double gravity = 9.81;       // m/s^2 along -z
  bool render_bundles = true;  // high-res ground-truth dumps

  SimConfig();

  double dt() const { return 1.0 / physics_hz; }
  uint64_t bootstrap_steps() const;
  uint64_t total_steps() const;  // bootstrap + duration
  uint64_t step_timestamp_ns(uint64_t k) const {
    return k * 1'000'000'000ull / physics_hz;
  }

  /// Throws InvalidInput unless every rate divides physics_hz and the
  /// bootstrap/duration spans are whole numbers of steps.
  void validate() const;
};

/// Channels due at step k: channel c fires iff k mod (physics_hz/rate_c)
/// == 0; Start fires only on the first post-bootstrap step.
std::vector<Channel> schedule_channels(uint64_t k, const SimConfig& config);

}  // namespace dynsim
