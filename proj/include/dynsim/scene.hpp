#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "dynsim/animation.hpp"
#include "dynsim/bvh.hpp"

namespace dynsim {

inline constexpr uint32_t kBackgroundId = 0;
inline constexpr uint32_t kEnvironmentId = 1;

/// A dynamic asset installed in the world. Humans carry their ground
/// placement in `place`; flyer tracks are already world-frame.
struct SceneObject {
  AnimatedAsset asset;
  Pose place;
  uint32_t id = 0;
};

struct Scene {
  CollisionObject env;   // asset_id == kEnvironmentId
  std::vector<SceneObject> objects;
};

/// World-frame geometry of every dynamic object at one instant, with
/// fresh BVHs for raycasting.
struct SceneSnapshot {
  double t = 0;
  struct Entry {
    TriMesh mesh;  // world frame
    Bvh bvh;
    Eigen::AlignedBox3d box;
    uint32_t id = 0;
  };
  std::vector<Entry> dynamics;
};

SceneSnapshot snapshot_scene(const Scene& scene, double t);

struct SceneHit {
  double t = 0;
  uint32_t id = kBackgroundId;
  Vec3 normal{0, 0, 1};
};

/// Nearest hit across the environment and every snapshot object.
/// Equal-t ties keep the earlier candidate (environment first, then
/// objects in id order), which is traversal-order independent.
std::optional<SceneHit> scene_raycast(const Scene& scene, const SceneSnapshot& snap,
                                      const Vec3& origin, const Vec3& dir);

}  // namespace dynsim
