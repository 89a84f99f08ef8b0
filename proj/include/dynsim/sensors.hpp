#pragma once

#include <optional>

#include "dynsim/payloads.hpp"
#include "dynsim/scene.hpp"
#include "dynsim/sim_config.hpp"

namespace dynsim {

/// One raycast pass over the scene: z-depth (0 = miss), per-pixel asset
/// id (0 = background) and a |cos|-shaded grayscale view. Depth and
/// instance are consistent by construction: depth == 0 iff id == 0.
struct RenderResult {
  int width = 0, height = 0;
  std::vector<float> depth;
  std::vector<uint32_t> instance;
  std::vector<uint8_t> shaded;

  size_t index(int u, int v) const { return static_cast<size_t>(v) * width + u; }
};

/// `cam_world` is the optical-frame pose (+z forward, +x right, +y down).
RenderResult render_view(const Pose& cam_world, const CameraIntrinsics& intrinsics,
                         const Scene& scene, const SceneSnapshot& snap);

/// Depth-only / instance-only conveniences over render_view.
std::vector<float> render_depth(const Pose& cam_world, const CameraIntrinsics& intrinsics,
                                const Scene& scene, const SceneSnapshot& snap);
std::vector<uint32_t> render_instances(const Pose& cam_world,
                                       const CameraIntrinsics& intrinsics, const Scene& scene,
                                       const SceneSnapshot& snap);

struct Box2D {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // pixel coordinates
};

struct ObjectBoxes {
  uint32_t id = 0;
  std::optional<Box2D> tight;  // extent of visible instance pixels
  std::optional<Box2D> loose;  // projected 3D AABB clipped to the viewport
  Vec3 box3d_min{0, 0, 0};     // world-frame AABB at the snapshot instant
  Vec3 box3d_max{0, 0, 0};
};

/// Boxes for every dynamic object (id order). Tight boxes come from the
/// instance image; loose boxes from projecting the world AABB (occluded
/// extent included); 3D from the snapshot AABB.
std::vector<ObjectBoxes> extract_boxes(const RenderResult& rendered, const SceneSnapshot& snap,
                                       const Pose& cam_world,
                                       const CameraIntrinsics& intrinsics);

/// Body-frame IMU from three consecutive poses one dt apart: angular
/// velocity from the quaternion increment over 2*dt, specific force
/// R^T (a - g) with a from the central second difference. Throws when
/// fewer than 3 poses are supplied.
ImuSample synth_imu(std::span<const Pose> window, double dt, double gravity);
ImuSample synth_imu(const Pose& prev, const Pose& curr, const Pose& next, double dt,
                    double gravity);

}  // namespace dynsim
