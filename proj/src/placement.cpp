#include "dynsim/placement.hpp"

#include <numbers>

#include "dynsim/error.hpp"

namespace dynsim {

Candidate sample_candidate(const FootprintPolygon& poly, Rng& rng) {
  if (poly.vertices.size() < 3 || poly.area() <= 0)
    throw InvalidInput("sample_candidate: degenerate polygon");
  Vec2 lo = poly.vertices[0], hi = poly.vertices[0];
  for (const auto& v : poly.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  for (int guard = 0; guard < 10'000'000; ++guard) {
    const double x = rng.uniform(lo.x(), hi.x());
    const double y = rng.uniform(lo.y(), hi.y());
    if (poly.contains(Vec2(x, y)))
      return {x, y, rng.uniform(0.0, 2.0 * std::numbers::pi)};
  }
  throw InvalidInput("sample_candidate: rejection sampling failed to hit the polygon");
}

Pose placement_pose(const Placement& p, const TriMesh& trace_mesh) {
  const double min_z = trace_mesh.aabb().min().z();
  return Pose(Vec3(p.x, p.y, -min_z), quat_from_rpy(0, 0, p.yaw));
}

PlacementResult place_all(const CollisionObject& env, const FootprintPolygon& footprint,
                          const std::vector<const CollisionObject*>& traces,
                          const PlacementConfig& cfg, Rng& rng) {
  if (env.mesh.empty()) throw InvalidInput("place_all: empty environment");
  if (cfg.contact_threshold < 1 || cfg.max_attempts_per_asset < 1)
    throw InvalidInput("place_all: threshold and attempts must be >= 1");

  PlacementResult result;
  result.attempts.assign(traces.size(), 0);
  std::vector<std::pair<const CollisionObject*, Pose>> placed_objs;
  const Pose env_pose = Pose::identity();

  for (size_t i = 0; i < traces.size(); ++i) {
    const CollisionObject& trace = *traces[i];
    const uint32_t id = trace.mesh.asset_id;
    bool accepted = false;
    for (uint32_t attempt = 1; attempt <= cfg.max_attempts_per_asset; ++attempt) {
      result.attempts[i] = attempt;
      const Candidate cand = sample_candidate(footprint, rng);
      Placement pl{id, cand.x, cand.y, cand.yaw};
      const Pose pose = placement_pose(pl, trace.mesh);
      if (contact_count(trace, pose, env, env_pose, cfg.contact_threshold) >=
          cfg.contact_threshold)
        continue;
      bool clear = true;
      for (const auto& [other, other_pose] : placed_objs) {
        if (contact_count(trace, pose, *other, other_pose, cfg.contact_threshold) >=
            cfg.contact_threshold) {
          clear = false;
          break;
        }
      }
      if (!clear) continue;
      result.placed.push_back(pl);
      placed_objs.emplace_back(&trace, pose);
      accepted = true;
      break;
    }
    if (!accepted) result.dropped.push_back(id);
  }
  return result;
}

PlacementResult place_all(const CollisionObject& env,
                          const std::vector<const CollisionObject*>& traces,
                          const PlacementConfig& cfg, Rng& rng) {
  return place_all(env, enclosing_polygon(env.mesh), traces, cfg, rng);
}

std::vector<AnimatedAsset> spawn_flyers(const ScenarioConfig& scenario, const Rect2D& env_rect,
                                        Rng& rng, const FlyerParams& base) {
  FlyerParams params = base;
  const double z0 = base.bounds.isEmpty() ? 0.3 : base.bounds.min().z();
  const double z1 = base.bounds.isEmpty() ? 2.2 : base.bounds.max().z();
  params.bounds = Eigen::AlignedBox3d(Vec3(env_rect.min.x(), env_rect.min.y(), z0),
                                      Vec3(env_rect.max.x(), env_rect.max.y(), z1));
  std::vector<AnimatedAsset> flyers;
  flyers.reserve(scenario.flyers_a + scenario.flyers_b);
  for (int k = 0; k < scenario.flyers_a; ++k) {
    params.shape = FlyerShape::Box;
    flyers.push_back(gen_flyer(rng, params));
  }
  for (int k = 0; k < scenario.flyers_b; ++k) {
    params.shape = FlyerShape::Ellipsoid;
    flyers.push_back(gen_flyer(rng, params));
  }
  return flyers;
}

}  // namespace dynsim
