#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <array>
#include <cstdint>
#include <vector>

namespace dynsim {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Quat = Eigen::Quaterniond;

/// Rigid pose: position + unit quaternion (normalized on construction).
struct Pose {
  Vec3 position{0, 0, 0};
  Quat orientation{1, 0, 0, 0};

  Pose() = default;
  Pose(const Vec3& p, const Quat& q) : position(p), orientation(q.normalized()) {}

  Vec3 apply(const Vec3& p) const { return position + orientation * p; }
  Pose inverse() const {
    const Quat qi = orientation.conjugate();
    return Pose(qi * (-position), qi);
  }
  Pose compose(const Pose& rhs) const {  // this ∘ rhs
    return Pose(apply(rhs.position), orientation * rhs.orientation);
  }
  static Pose identity() { return Pose(); }
};

/// ZYX Euler convention: q = Rz(yaw) * Ry(pitch) * Rx(roll).
Quat quat_from_rpy(double roll, double pitch, double yaw);

/// Indexed triangle mesh. Ground plane is z=0, +z up.
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<uint32_t, 3>> triangles;
  uint32_t asset_id = 0;

  size_t vertex_count() const { return vertices.size(); }
  size_t triangle_count() const { return triangles.size(); }
  bool empty() const { return triangles.empty(); }

  Vec3 tri_vertex(size_t tri, int corner) const {
    return vertices[triangles[tri][corner]];
  }
  double tri_area(size_t tri) const;

  Eigen::AlignedBox3d aabb() const;

  /// New mesh with every vertex mapped through `pose`.
  TriMesh transformed(const Pose& pose) const;
  /// Appends another mesh's geometry (indices remapped). asset_id kept.
  void append(const TriMesh& other);
  void translate(const Vec3& d);
};

/// Axis-aligned 2D rectangle (ground-plane footprint bounds).
struct Rect2D {
  Vec2 min{0, 0};
  Vec2 max{0, 0};

  double width() const { return max.x() - min.x(); }
  double height() const { return max.y() - min.y(); }
  Vec2 center() const { return 0.5 * (min + max); }
  bool contains(const Vec2& p) const {
    return p.x() >= min.x() && p.x() <= max.x() && p.y() >= min.y() && p.y() <= max.y();
  }
};

/// Simple polygon, vertices counter-clockwise.
struct FootprintPolygon {
  std::vector<Vec2> vertices;
  bool is_convex = false;

  double area() const;                    // signed (positive when CCW)
  bool contains(const Vec2& p) const;     // even-odd rule; boundary counts as inside
};

enum class Cell : uint8_t { Unknown = 0, Free = 1, Occupied = 2 };

struct OccupancyGrid2D {
  double resolution = 0.05;  // m / cell
  Vec2 origin{0, 0};         // world position of cell (0,0) min corner
  int nx = 0, ny = 0;
  std::vector<Cell> cells;   // row-major, index = j*nx + i

  Cell at(int i, int j) const { return cells[static_cast<size_t>(j) * nx + i]; }
  Cell& at(int i, int j) { return cells[static_cast<size_t>(j) * nx + i]; }
  Vec2 cell_center(int i, int j) const {
    return origin + Vec2((i + 0.5) * resolution, (j + 0.5) * resolution);
  }
  size_t count(Cell c) const;
};

}  // namespace dynsim
