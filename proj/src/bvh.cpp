#include "dynsim/bvh.hpp"

#include <algorithm>
#include <numeric>

#include "dynsim/error.hpp"
#include "dynsim/tri_intersect.hpp"

namespace dynsim {

Bvh::Bvh(const TriMesh& mesh) {
  if (mesh.empty()) throw InvalidInput("cannot build BVH over an empty mesh");
  const uint32_t n = static_cast<uint32_t>(mesh.triangle_count());
  tri_order_.resize(n);
  std::iota(tri_order_.begin(), tri_order_.end(), 0u);
  std::vector<Vec3> centroids(n);
  for (uint32_t t = 0; t < n; ++t)
    centroids[t] = (mesh.tri_vertex(t, 0) + mesh.tri_vertex(t, 1) + mesh.tri_vertex(t, 2)) / 3.0;
  nodes_.reserve(2 * n / kLeafSize + 2);
  build(mesh, centroids, 0, n);
}

int32_t Bvh::build(const TriMesh& mesh, std::vector<Vec3>& centroids, uint32_t begin,
                   uint32_t end) {
  const int32_t idx = static_cast<int32_t>(nodes_.size());
  nodes_.emplace_back();
  Eigen::AlignedBox3d box;
  for (uint32_t i = begin; i < end; ++i) {
    const uint32_t t = tri_order_[i];
    box.extend(mesh.tri_vertex(t, 0));
    box.extend(mesh.tri_vertex(t, 1));
    box.extend(mesh.tri_vertex(t, 2));
  }
  nodes_[idx].box = box;

  const uint32_t count = end - begin;
  if (count <= kLeafSize) {
    nodes_[idx].first = begin;
    nodes_[idx].count = count;
    return idx;
  }

  // Median split on the widest centroid axis; index split when all
  // centroids coincide so leaves never exceed kLeafSize.
  Eigen::AlignedBox3d cbox;
  for (uint32_t i = begin; i < end; ++i) cbox.extend(centroids[tri_order_[i]]);
  int axis = 0;
  const Vec3 ext = cbox.sizes();
  if (ext.y() > ext.x()) axis = 1;
  if (ext.z() > ext[axis]) axis = 2;

  const uint32_t mid = begin + count / 2;
  std::nth_element(tri_order_.begin() + begin, tri_order_.begin() + mid,
                   tri_order_.begin() + end, [&](uint32_t a, uint32_t b) {
                     if (centroids[a][axis] != centroids[b][axis])
                       return centroids[a][axis] < centroids[b][axis];
                     return a < b;  // stable tie-break keeps builds deterministic
                   });

  const int32_t l = build(mesh, centroids, begin, mid);
  const int32_t r = build(mesh, centroids, mid, end);
  nodes_[idx].left = l;
  nodes_[idx].right = r;
  return idx;
}

namespace {

/// Slab test returning entry parameter; hits behind the origin rejected
/// only when the whole box is behind (tmax < 0).
bool ray_box(const Vec3& origin, const Vec3& inv_dir, const Eigen::AlignedBox3d& box,
             double t_best) {
  double tmin = 0.0;
  double tmax = t_best;
  for (int a = 0; a < 3; ++a) {
    double t0 = (box.min()[a] - origin[a]) * inv_dir[a];
    double t1 = (box.max()[a] - origin[a]) * inv_dir[a];
    if (inv_dir[a] < 0) std::swap(t0, t1);
    tmin = t0 > tmin ? t0 : tmin;
    tmax = t1 < tmax ? t1 : tmax;
    if (tmax < tmin) return false;
  }
  return true;
}

}  // namespace

std::optional<RayHit> Bvh::raycast(const TriMesh& mesh, const Vec3& origin,
                                   const Vec3& dir) const {
  if (nodes_.empty()) return std::nullopt;
  if (dir.squaredNorm() == 0.0) throw InvalidInput("raycast: zero direction");
  const Vec3 inv_dir = dir.cwiseInverse();

  double best_t = std::numeric_limits<double>::infinity();
  uint32_t best_tri = UINT32_MAX;

  int32_t stack[64];
  int sp = 0;
  stack[sp++] = 0;
  while (sp > 0) {
    const Node& node = nodes_[stack[--sp]];
    if (!ray_box(origin, inv_dir, node.box, best_t)) continue;
    if (node.is_leaf()) {
      for (uint32_t i = node.first; i < node.first + node.count; ++i) {
        const uint32_t t = tri_order_[i];
        double hit;
        if (ray_tri_intersect(origin, dir, mesh.tri_vertex(t, 0), mesh.tri_vertex(t, 1),
                              mesh.tri_vertex(t, 2), hit)) {
          if (hit < best_t || (hit == best_t && t < best_tri)) {
            best_t = hit;
            best_tri = t;
          }
        }
      }
    } else {
      stack[sp++] = node.right;
      stack[sp++] = node.left;
    }
  }

  if (best_tri == UINT32_MAX) return std::nullopt;
  RayHit hit;
  hit.t = best_t;
  hit.triangle = best_tri;
  hit.asset_id = mesh.asset_id;
  const Vec3 e1 = mesh.tri_vertex(best_tri, 1) - mesh.tri_vertex(best_tri, 0);
  const Vec3 e2 = mesh.tri_vertex(best_tri, 2) - mesh.tri_vertex(best_tri, 0);
  hit.normal = e1.cross(e2).normalized();
  return hit;
}

namespace {

Eigen::AlignedBox3d transform_box(const Eigen::AlignedBox3d& box, const Pose& pose) {
  Eigen::AlignedBox3d out;
  for (int c = 0; c < 8; ++c)
    out.extend(pose.apply(box.corner(static_cast<Eigen::AlignedBox3d::CornerType>(c))));
  return out;
}

struct ContactCtx {
  const TriMesh* mesh_a;
  const TriMesh* mesh_b;
  const Bvh* bvh_a;
  const Bvh* bvh_b;
  Pose pose_a, pose_b;
  uint32_t cap = UINT32_MAX;
  uint32_t count = 0;

  Vec3 world_a(uint32_t tri, int corner) const {
    return pose_a.apply(mesh_a->tri_vertex(tri, corner));
  }
  Vec3 world_b(uint32_t tri, int corner) const {
    return pose_b.apply(mesh_b->tri_vertex(tri, corner));
  }
};

void descend(ContactCtx& ctx, int32_t na, int32_t nb) {
  if (ctx.count >= ctx.cap) return;
  const Bvh::Node& a = ctx.bvh_a->nodes()[na];
  const Bvh::Node& b = ctx.bvh_b->nodes()[nb];
  // Conservative prune: world-frame AABBs of the (rotated) node boxes.
  if (!transform_box(a.box, ctx.pose_a).intersects(transform_box(b.box, ctx.pose_b))) return;

  if (a.is_leaf() && b.is_leaf()) {
    for (uint32_t i = a.first; i < a.first + a.count && ctx.count < ctx.cap; ++i) {
      const uint32_t ta = ctx.bvh_a->triangle_order()[i];
      const Vec3 a0 = ctx.world_a(ta, 0), a1 = ctx.world_a(ta, 1), a2 = ctx.world_a(ta, 2);
      for (uint32_t j = b.first; j < b.first + b.count && ctx.count < ctx.cap; ++j) {
        const uint32_t tb = ctx.bvh_b->triangle_order()[j];
        if (tri_tri_intersect(a0, a1, a2, ctx.world_b(tb, 0), ctx.world_b(tb, 1),
                              ctx.world_b(tb, 2)))
          ++ctx.count;
      }
    }
    return;
  }
  if (a.is_leaf()) {
    descend(ctx, na, b.left);
    descend(ctx, na, b.right);
  } else if (b.is_leaf()) {
    descend(ctx, a.left, nb);
    descend(ctx, a.right, nb);
  } else {
    descend(ctx, a.left, b.left);
    descend(ctx, a.left, b.right);
    descend(ctx, a.right, b.left);
    descend(ctx, a.right, b.right);
  }
}

}  // namespace

uint32_t contact_count(const CollisionObject& a, const Pose& pose_a,
                       const CollisionObject& b, const Pose& pose_b, uint32_t cap) {
  if (cap < 1) throw InvalidInput("contact_count: cap must be >= 1");
  if (a.mesh.empty() || b.mesh.empty())
    throw InvalidInput("contact_count: empty mesh");
  ContactCtx ctx;
  ctx.mesh_a = &a.mesh;
  ctx.mesh_b = &b.mesh;
  ctx.bvh_a = &a.bvh;
  ctx.bvh_b = &b.bvh;
  ctx.pose_a = pose_a;
  ctx.pose_b = pose_b;
  ctx.cap = cap;
  descend(ctx, 0, 0);
  return ctx.count;
}

}  // namespace dynsim
