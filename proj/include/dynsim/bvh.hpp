#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dynsim/mesh.hpp"

namespace dynsim {

struct RayHit {
  double t = 0;            // parameter along the (possibly unnormalized) ray
  uint32_t triangle = 0;   // index into the source mesh
  Vec3 normal{0, 0, 1};    // unit geometric normal (not flipped toward the ray)
  uint32_t asset_id = 0;
};

/// Binary AABB tree over a TriMesh. Median split on the centroid of the
/// largest axis, leaves hold at most kLeafSize triangles. Immutable after
/// construction; safe for concurrent queries.
class Bvh {
 public:
  static constexpr uint32_t kLeafSize = 8;

  struct Node {
    Eigen::AlignedBox3d box;
    int32_t left = -1;    // child node indices; -1 for leaves
    int32_t right = -1;
    uint32_t first = 0;   // range into triangle order (leaves only)
    uint32_t count = 0;   // > 0 iff leaf
    bool is_leaf() const { return count > 0; }
  };

  Bvh() = default;
  explicit Bvh(const TriMesh& mesh);  // throws InvalidInput on empty mesh

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<uint32_t>& triangle_order() const { return tri_order_; }
  const Eigen::AlignedBox3d& root_box() const { return nodes_.front().box; }
  bool empty() const { return nodes_.empty(); }

  /// Nearest positive-t hit. Ties on t resolved toward the lower triangle
  /// index, so results are traversal-order independent.
  std::optional<RayHit> raycast(const TriMesh& mesh, const Vec3& origin,
                                const Vec3& dir) const;

 private:
  std::vector<Node> nodes_;
  std::vector<uint32_t> tri_order_;

  int32_t build(const TriMesh& mesh, std::vector<Vec3>& centroids, uint32_t begin,
                uint32_t end);
};

/// A mesh paired with its acceleration structure.
struct CollisionObject {
  TriMesh mesh;
  Bvh bvh;

  CollisionObject() = default;
  explicit CollisionObject(TriMesh m) : mesh(std::move(m)), bvh(mesh) {}
};

/// Number of intersecting triangle pairs between the two posed meshes,
/// early-exiting once the count reaches `cap`. Pair predicates are
/// evaluated on world-frame triangles so the result is bit-identical to
/// an exhaustive all-pairs census over the same transformed vertices.
uint32_t contact_count(const CollisionObject& a, const Pose& pose_a,
                       const CollisionObject& b, const Pose& pose_b,
                       uint32_t cap = UINT32_MAX);

}  // namespace dynsim
