#include "dynsim/payloads.hpp"

#include <cstring>

#include "dynsim/error.hpp"

namespace dynsim {

namespace {

void put_f64(std::vector<uint8_t>& out, double v) {
  const size_t at = out.size();
  out.resize(at + 8);
  std::memcpy(out.data() + at, &v, 8);
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  const size_t at = out.size();
  out.resize(at + 4);
  std::memcpy(out.data() + at, &v, 4);
}

double get_f64(std::span<const uint8_t> p, size_t at) {
  if (at + 8 > p.size()) throw ParseError("payload truncated", at);
  double v;
  std::memcpy(&v, p.data() + at, 8);
  return v;
}

}  // namespace

std::vector<uint8_t> encode_u64(uint64_t v) {
  std::vector<uint8_t> out(8);
  std::memcpy(out.data(), &v, 8);
  return out;
}

std::vector<uint8_t> encode_f64(std::span<const double> values) {
  std::vector<uint8_t> out;
  out.reserve(values.size() * 8);
  for (double v : values) put_f64(out, v);
  return out;
}

std::vector<uint8_t> encode_imu(const ImuSample& s) {
  const double vals[6] = {s.angular_velocity.x(), s.angular_velocity.y(),
                          s.angular_velocity.z(), s.specific_force.x(),
                          s.specific_force.y(),   s.specific_force.z()};
  return encode_f64(vals);
}

std::vector<uint8_t> encode_pose(const Pose& p) {
  const double vals[7] = {p.position.x(),    p.position.y(),    p.position.z(),
                          p.orientation.x(), p.orientation.y(), p.orientation.z(),
                          p.orientation.w()};
  return encode_f64(vals);
}

std::vector<uint8_t> encode_joint_state(const Vec6& q, const Vec6& qdot) {
  std::vector<uint8_t> out;
  for (int i = 0; i < 6; ++i) put_f64(out, q[i]);
  for (int i = 0; i < 6; ++i) put_f64(out, qdot[i]);
  return out;
}

std::vector<uint8_t> encode_odom(const Pose& pose, const Vec6& twist) {
  std::vector<uint8_t> out = encode_pose(pose);
  for (int i = 0; i < 6; ++i) put_f64(out, twist[i]);
  return out;
}

std::vector<uint8_t> encode_tf(std::span<const TfEntry> entries) {
  std::vector<uint8_t> out;
  put_u32(out, static_cast<uint32_t>(entries.size()));
  for (const auto& e : entries) {
    put_u32(out, static_cast<uint32_t>(e.parent.size()));
    out.insert(out.end(), e.parent.begin(), e.parent.end());
    put_u32(out, static_cast<uint32_t>(e.child.size()));
    out.insert(out.end(), e.child.begin(), e.child.end());
    const auto pose = encode_pose(e.transform);
    out.insert(out.end(), pose.begin(), pose.end());
  }
  return out;
}

std::vector<uint8_t> encode_gray_image(int w, int h, std::span<const uint8_t> pixels) {
  std::vector<uint8_t> out;
  put_u32(out, static_cast<uint32_t>(w));
  put_u32(out, static_cast<uint32_t>(h));
  out.insert(out.end(), pixels.begin(), pixels.end());
  return out;
}

std::vector<uint8_t> encode_depth_image(int w, int h, std::span<const float> depths) {
  std::vector<uint8_t> out;
  put_u32(out, static_cast<uint32_t>(w));
  put_u32(out, static_cast<uint32_t>(h));
  const size_t at = out.size();
  out.resize(at + depths.size() * 4);
  std::memcpy(out.data() + at, depths.data(), depths.size() * 4);
  return out;
}

DepthImage decode_depth_image(std::span<const uint8_t> p) {
  if (p.size() < 8) throw ParseError("depth image payload too short", p.size());
  DepthImage img;
  uint32_t w, h;
  std::memcpy(&w, p.data(), 4);
  std::memcpy(&h, p.data() + 4, 4);
  img.width = static_cast<int>(w);
  img.height = static_cast<int>(h);
  const size_t n = static_cast<size_t>(w) * h;
  if (p.size() != 8 + n * 4) throw ParseError("depth image payload size mismatch", p.size());
  img.depths.resize(n);
  std::memcpy(img.depths.data(), p.data() + 8, n * 4);
  return img;
}

GrayImage decode_gray_image(std::span<const uint8_t> p) {
  if (p.size() < 8) throw ParseError("gray image payload too short", p.size());
  GrayImage img;
  uint32_t w, h;
  std::memcpy(&w, p.data(), 4);
  std::memcpy(&h, p.data() + 4, 4);
  img.width = static_cast<int>(w);
  img.height = static_cast<int>(h);
  const size_t n = static_cast<size_t>(w) * h;
  if (p.size() != 8 + n) throw ParseError("gray image payload size mismatch", p.size());
  img.pixels.assign(p.begin() + 8, p.end());
  return img;
}

std::vector<double> decode_f64(std::span<const uint8_t> p) {
  if (p.size() % 8 != 0) throw ParseError("f64 payload size not a multiple of 8", p.size());
  std::vector<double> out(p.size() / 8);
  for (size_t i = 0; i < out.size(); ++i) out[i] = get_f64(p, i * 8);
  return out;
}

Pose decode_pose(std::span<const uint8_t> p) {
  const auto v = decode_f64(p);
  if (v.size() < 7) throw ParseError("pose payload needs 7 doubles", p.size());
  Pose pose;
  pose.position = Vec3(v[0], v[1], v[2]);
  pose.orientation.x() = v[3];
  pose.orientation.y() = v[4];
  pose.orientation.z() = v[5];
  pose.orientation.w() = v[6];
  return pose;
}

ImuSample decode_imu(std::span<const uint8_t> p, double timestamp) {
  const auto v = decode_f64(p);
  if (v.size() != 6) throw ParseError("imu payload needs 6 doubles", p.size());
  ImuSample s;
  s.timestamp = timestamp;
  s.angular_velocity = Vec3(v[0], v[1], v[2]);
  s.specific_force = Vec3(v[3], v[4], v[5]);
  return s;
}

}  // namespace dynsim
