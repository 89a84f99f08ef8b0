#include "dynsim/sim_config.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

#include "dynsim/error.hpp"

namespace dynsim {

double CameraIntrinsics::fx() const {
  return (width / 2.0) / std::tan(hfov_deg * std::numbers::pi / 360.0);
}

double CameraIntrinsics::fy() const {
  return (height / 2.0) / std::tan(vfov_deg * std::numbers::pi / 360.0);
}

Vec3 CameraIntrinsics::pixel_ray(int u, int v) const {
  return Vec3((u + 0.5 - cx()) / fx(), (v + 0.5 - cy()) / fy(), 1.0);
}

Pose CameraConfig::forward_mount(const Vec3& offset) {
  Eigen::Matrix3d r;
  // columns: optical x, y, z expressed in body coordinates
  r.col(0) = Vec3(0, -1, 0);
  r.col(1) = Vec3(0, 0, -1);
  r.col(2) = Vec3(1, 0, 0);
  return Pose(offset, Quat(r));
}

uint32_t ChannelRates::of(Channel c) const {
  switch (c) {
    case Channel::Clock: return clock;
    case Channel::Imu: return imu;
    case Channel::Tf: return tf;
    case Channel::Joints: return joints;
    case Channel::CamPose: return cam_pose;
    case Channel::Odom: return odom;
    case Channel::Rgb: return rgb;
    case Channel::Depth: return depth;
    case Channel::Start: return 0;
  }
  return 0;
}

SimConfig::SimConfig() {
  cam_low.intrinsics = {640, 480, 86.0, 57.0};
  cam_low.mount = CameraConfig::forward_mount();
  cam_high.intrinsics = {1920, 1080, 86.0, 57.0};
  cam_high.mount = CameraConfig::forward_mount();
}

uint64_t SimConfig::bootstrap_steps() const {
  return static_cast<uint64_t>(std::llround(bootstrap_s * physics_hz));
}

uint64_t SimConfig::total_steps() const {
  return static_cast<uint64_t>(std::llround((bootstrap_s + duration_s) * physics_hz));
}

void SimConfig::validate() const {
  if (physics_hz == 0) throw InvalidInput("physics_hz must be positive");
  const uint32_t all[] = {rates.clock, rates.imu,  rates.tf,  rates.joints,
                          rates.cam_pose, rates.odom, rates.rgb, rates.depth};
  for (uint32_t r : all)
    if (r == 0 || physics_hz % r != 0)
      throw InvalidInput(
          fmt::format("channel rate {} Hz does not divide the physics rate {}", r, physics_hz));
  auto whole_steps = [&](double seconds) {
    const double steps = seconds * physics_hz;
    return std::abs(steps - std::round(steps)) < 1e-9;
  };
  if (!whole_steps(bootstrap_s) || !whole_steps(duration_s))
    throw InvalidInput("bootstrap and duration must be whole numbers of physics steps");
  if (cam_low.intrinsics.width <= 0 || cam_low.intrinsics.height <= 0 ||
      cam_high.intrinsics.width <= 0 || cam_high.intrinsics.height <= 0)
    throw InvalidInput("camera resolutions must be positive");
}

std::vector<Channel> schedule_channels(uint64_t k, const SimConfig& config) {
  std::vector<Channel> due;
  const Channel periodic[] = {Channel::Clock, Channel::Imu,     Channel::Tf,
                              Channel::Joints, Channel::CamPose, Channel::Odom,
                              Channel::Rgb,   Channel::Depth};
  for (Channel c : periodic) {
    const uint32_t rate = config.rates.of(c);
    if (k % (config.physics_hz / rate) == 0) due.push_back(c);
  }
  if (k == config.bootstrap_steps()) due.push_back(Channel::Start);
  return due;
}

}  // namespace dynsim
