#pragma once

#include <vector>

#include "dynsim/bvh.hpp"
#include "dynsim/footprint.hpp"
#include "dynsim/procedural.hpp"
#include "dynsim/scenario.hpp"

namespace dynsim {

struct PlacementConfig {
  uint32_t contact_threshold = 200;   // accepted iff contacts < threshold
  uint32_t max_attempts_per_asset = 100;
};

struct Placement {
  uint32_t asset_id = 0;
  double x = 0, y = 0, yaw = 0;

  Pose pose(double z = 0.0) const {
    return Pose(Vec3(x, y, z), quat_from_rpy(0, 0, yaw));
  }
};

struct PlacementResult {
  std::vector<Placement> placed;
  std::vector<uint32_t> dropped;
  std::vector<uint32_t> attempts;  // per input asset, in input order
};

struct Candidate {
  double x, y, yaw;
};

/// Uniform sample over the polygon interior (rejection from its bounding
/// rectangle); yaw uniform in [0, 2*pi).
Candidate sample_candidate(const FootprintPolygon& poly, Rng& rng);

/// Sequentially places swept traces into the environment: a candidate is
/// accepted when its contact count against the environment and every
/// previously placed trace stays below the threshold; after
/// max_attempts_per_asset failures the asset is dropped. Each trace is
/// placed with its minimum z on the ground plane.
PlacementResult place_all(const CollisionObject& env, const FootprintPolygon& footprint,
                          const std::vector<const CollisionObject*>& traces,
                          const PlacementConfig& cfg, Rng& rng);

/// Same, with the footprint computed from the environment mesh.
PlacementResult place_all(const CollisionObject& env,
                          const std::vector<const CollisionObject*>& traces,
                          const PlacementConfig& cfg, Rng& rng);

/// World-frame pose of a placed trace (ground alignment included).
Pose placement_pose(const Placement& p, const TriMesh& trace_mesh);

/// Exactly flyers_a box + flyers_b ellipsoid assets, tracks spanning the
/// environment rectangle; no collision checks by design.
std::vector<AnimatedAsset> spawn_flyers(const ScenarioConfig& scenario, const Rect2D& env_rect,
                                        Rng& rng, const FlyerParams& base = {});

}  // namespace dynsim
