#include "dynsim/scene.hpp"

namespace dynsim {

SceneSnapshot snapshot_scene(const Scene& scene, double t) {
  SceneSnapshot snap;
  snap.t = t;
  snap.dynamics.reserve(scene.objects.size());
  for (const auto& obj : scene.objects) {
    SceneSnapshot::Entry entry;
    entry.id = obj.id;
    entry.mesh = sample_frame(obj.asset, t).transformed(obj.place);
    entry.mesh.asset_id = obj.id;
    entry.bvh = Bvh(entry.mesh);
    entry.box = entry.mesh.aabb();
    snap.dynamics.push_back(std::move(entry));
  }
  return snap;
}

namespace {

bool ray_hits_box(const Vec3& origin, const Vec3& dir, const Eigen::AlignedBox3d& box,
                  double t_best) {
  double tmin = 0.0, tmax = t_best;
  for (int a = 0; a < 3; ++a) {
    const double inv = 1.0 / dir[a];
    double t0 = (box.min()[a] - origin[a]) * inv;
    double t1 = (box.max()[a] - origin[a]) * inv;
    if (inv < 0) std::swap(t0, t1);
    tmin = t0 > tmin ? t0 : tmin;
    tmax = t1 < tmax ? t1 : tmax;
    if (tmax < tmin) return false;
  }
  return true;
}

}  // namespace

std::optional<SceneHit> scene_raycast(const Scene& scene, const SceneSnapshot& snap,
                                      const Vec3& origin, const Vec3& dir) {
  std::optional<SceneHit> best;
  double best_t = std::numeric_limits<double>::infinity();
  if (auto hit = scene.env.bvh.raycast(scene.env.mesh, origin, dir)) {
    best = SceneHit{hit->t, kEnvironmentId, hit->normal};
    best_t = hit->t;
  }
  for (const auto& entry : snap.dynamics) {
    if (!ray_hits_box(origin, dir, entry.box, best_t)) continue;
    if (auto hit = entry.bvh.raycast(entry.mesh, origin, dir)) {
      if (hit->t < best_t) {
        best = SceneHit{hit->t, entry.id, hit->normal};
        best_t = hit->t;
      }
    }
  }
  return best;
}

}  // namespace dynsim
