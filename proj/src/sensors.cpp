#include "dynsim/sensors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dynsim/error.hpp"

namespace dynsim {

RenderResult render_view(const Pose& cam_world, const CameraIntrinsics& K, const Scene& scene,
                         const SceneSnapshot& snap) {
  RenderResult out;
  out.width = K.width;
  out.height = K.height;
  const size_t n = static_cast<size_t>(K.width) * K.height;
  out.depth.assign(n, 0.f);
  out.instance.assign(n, kBackgroundId);
  out.shaded.assign(n, 0);

  const Vec3 origin = cam_world.position;
  for (int v = 0; v < K.height; ++v) {
    for (int u = 0; u < K.width; ++u) {
      const Vec3 dir = cam_world.orientation * K.pixel_ray(u, v);
      const auto hit = scene_raycast(scene, snap, origin, dir);
      if (!hit) continue;
      const size_t i = out.index(u, v);
      out.depth[i] = static_cast<float>(hit->t);  // dir_cam.z == 1: t is z-depth
      out.instance[i] = hit->id;
      const double cosang = std::abs(hit->normal.dot(dir.normalized()));
      out.shaded[i] = static_cast<uint8_t>(std::clamp(cosang, 0.0, 1.0) * 255.0);
    }
  }
  return out;
}

std::vector<float> render_depth(const Pose& cam_world, const CameraIntrinsics& K,
                                const Scene& scene, const SceneSnapshot& snap) {
  return render_view(cam_world, K, scene, snap).depth;
}

std::vector<uint32_t> render_instances(const Pose& cam_world, const CameraIntrinsics& K,
                                       const Scene& scene, const SceneSnapshot& snap) {
  return render_view(cam_world, K, scene, snap).instance;
}

namespace {

/// Projects the world AABB into pixel coordinates, clipping its edges at
/// the z = eps plane of the camera. Returns nothing when the whole box is
/// behind the camera or projects outside the viewport.
std::optional<Box2D> project_aabb(const Eigen::AlignedBox3d& box, const Pose& cam_world,
                                  const CameraIntrinsics& K) {
  constexpr double kNear = 1e-6;
  const Pose world_to_cam = cam_world.inverse();
  Vec3 corners[8];
  for (int c = 0; c < 8; ++c)
    corners[c] =
        world_to_cam.apply(box.corner(static_cast<Eigen::AlignedBox3d::CornerType>(c)));

  static constexpr int kEdges[12][2] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {4, 5}, {4, 6},
                                        {5, 7}, {6, 7}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  bool any = false;
  auto admit = [&](const Vec3& p) {
    const double u = K.cx() + K.fx() * p.x() / p.z();
    const double v = K.cy() + K.fy() * p.y() / p.z();
    x0 = std::min(x0, u);
    y0 = std::min(y0, v);
    x1 = std::max(x1, u);
    y1 = std::max(y1, v);
    any = true;
  };
  for (const Vec3& c : corners)
    if (c.z() >= kNear) admit(c);
  for (const auto& e : kEdges) {
    const Vec3& a = corners[e[0]];
    const Vec3& b = corners[e[1]];
    if ((a.z() < kNear) == (b.z() < kNear)) continue;
    const double s = (kNear - a.z()) / (b.z() - a.z());
    admit(a + s * (b - a));
  }
  if (!any) return std::nullopt;
  x0 = std::max(x0, 0.0);
  y0 = std::max(y0, 0.0);
  x1 = std::min(x1, static_cast<double>(K.width));
  y1 = std::min(y1, static_cast<double>(K.height));
  if (x0 >= x1 || y0 >= y1) return std::nullopt;
  return Box2D{x0, y0, x1, y1};
}

}  // namespace

std::vector<ObjectBoxes> extract_boxes(const RenderResult& rendered, const SceneSnapshot& snap,
                                       const Pose& cam_world, const CameraIntrinsics& K) {
  std::map<uint32_t, Box2D> tight;
  for (int v = 0; v < rendered.height; ++v)
    for (int u = 0; u < rendered.width; ++u) {
      const uint32_t id = rendered.instance[rendered.index(u, v)];
      if (id == kBackgroundId || id == kEnvironmentId) continue;
      auto it = tight.find(id);
      if (it == tight.end()) {
        tight[id] = Box2D{static_cast<double>(u), static_cast<double>(v),
                          static_cast<double>(u + 1), static_cast<double>(v + 1)};
      } else {
        it->second.x0 = std::min(it->second.x0, static_cast<double>(u));
        it->second.y0 = std::min(it->second.y0, static_cast<double>(v));
        it->second.x1 = std::max(it->second.x1, static_cast<double>(u + 1));
        it->second.y1 = std::max(it->second.y1, static_cast<double>(v + 1));
      }
    }

  std::vector<ObjectBoxes> out;
  out.reserve(snap.dynamics.size());
  for (const auto& entry : snap.dynamics) {
    ObjectBoxes boxes;
    boxes.id = entry.id;
    boxes.box3d_min = entry.box.min();
    boxes.box3d_max = entry.box.max();
    if (auto it = tight.find(entry.id); it != tight.end()) boxes.tight = it->second;
    boxes.loose = project_aabb(entry.box, cam_world, K);
    out.push_back(boxes);
  }
  return out;
}

ImuSample synth_imu(const Pose& prev, const Pose& curr, const Pose& next, double dt,
                    double gravity) {
  if (dt <= 0) throw InvalidInput("synth_imu: dt must be > 0");
  ImuSample s;
  const Vec3 a_world = (next.position - 2.0 * curr.position + prev.position) / (dt * dt);
  const Vec3 g_world(0, 0, -gravity);
  s.specific_force = curr.orientation.conjugate() * (a_world - g_world);

  Quat dq = prev.orientation.conjugate() * next.orientation;
  if (dq.w() < 0) dq.coeffs() = -dq.coeffs();  // shortest arc
  const Eigen::AngleAxisd aa(dq);
  s.angular_velocity = aa.axis() * (aa.angle() / (2.0 * dt));
  if (aa.angle() == 0.0) s.angular_velocity.setZero();
  return s;
}

ImuSample synth_imu(std::span<const Pose> window, double dt, double gravity) {
  if (window.size() < 3)
    throw InvalidInput("synth_imu: need at least 3 consecutive poses");
  const size_t n = window.size();
  return synth_imu(window[n - 3], window[n - 2], window[n - 1], dt, gravity);
}

}  // namespace dynsim
