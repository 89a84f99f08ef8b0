#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dynsim/mesh.hpp"
#include "dynsim/robot.hpp"

namespace dynsim {

/// Ground-truth IMU reading in the body frame.
struct ImuSample {
  double timestamp = 0;       // s
  Vec3 angular_velocity{0, 0, 0};  // rad/s
  Vec3 specific_force{0, 0, 0};    // m/s^2 (accelerometer convention)
};

/// Fixed little-endian payload layouts; see docs/FORMATS.md.
/// Type tags: u64, f64x6 (imu), f64x7 (pose), f64x12 (joints),
/// f64x13 (odom), tf, img.gray8, img.depth32.
std::vector<uint8_t> encode_u64(uint64_t v);
std::vector<uint8_t> encode_f64(std::span<const double> values);
std::vector<uint8_t> encode_imu(const ImuSample& sample);                 // gyro xyz, accel xyz
std::vector<uint8_t> encode_pose(const Pose& pose);                       // pos, quat xyzw
std::vector<uint8_t> encode_joint_state(const Vec6& q, const Vec6& qdot);
std::vector<uint8_t> encode_odom(const Pose& pose, const Vec6& twist);

struct TfEntry {
  std::string parent, child;
  Pose transform;
};
std::vector<uint8_t> encode_tf(std::span<const TfEntry> entries);

std::vector<uint8_t> encode_gray_image(int width, int height, std::span<const uint8_t> pixels);
std::vector<uint8_t> encode_depth_image(int width, int height, std::span<const float> depths);

struct DepthImage {
  int width = 0, height = 0;
  std::vector<float> depths;
};
struct GrayImage {
  int width = 0, height = 0;
  std::vector<uint8_t> pixels;
};
DepthImage decode_depth_image(std::span<const uint8_t> payload);
GrayImage decode_gray_image(std::span<const uint8_t> payload);
std::vector<double> decode_f64(std::span<const uint8_t> payload);
Pose decode_pose(std::span<const uint8_t> payload);
ImuSample decode_imu(std::span<const uint8_t> payload, double timestamp = 0);

}  // namespace dynsim
