#include "dynsim/mesh.hpp"

#include <cmath>

namespace dynsim {

Quat quat_from_rpy(double roll, double pitch, double yaw) {
  return Quat(Eigen::AngleAxisd(yaw, Vec3::UnitZ()) *
              Eigen::AngleAxisd(pitch, Vec3::UnitY()) *
              Eigen::AngleAxisd(roll, Vec3::UnitX()));
}

double TriMesh::tri_area(size_t tri) const {
  const Vec3 a = tri_vertex(tri, 0);
  const Vec3 b = tri_vertex(tri, 1);
  const Vec3 c = tri_vertex(tri, 2);
  return 0.5 * (b - a).cross(c - a).norm();
}

Eigen::AlignedBox3d TriMesh::aabb() const {
  Eigen::AlignedBox3d box;
  for (const auto& v : vertices) box.extend(v);
  return box;
}

TriMesh TriMesh::transformed(const Pose& pose) const {
  TriMesh out;
  out.asset_id = asset_id;
  out.triangles = triangles;
  out.vertices.reserve(vertices.size());
  for (const auto& v : vertices) out.vertices.push_back(pose.apply(v));
  return out;
}

void TriMesh::append(const TriMesh& other) {
  const uint32_t base = static_cast<uint32_t>(vertices.size());
  vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
  triangles.reserve(triangles.size() + other.triangles.size());
  for (const auto& t : other.triangles)
    triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
}

void TriMesh::translate(const Vec3& d) {
  for (auto& v : vertices) v += d;
}

double FootprintPolygon::area() const {
  double a = 0.0;
  const size_t n = vertices.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& p = vertices[i];
    const Vec2& q = vertices[(i + 1) % n];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a;
}

bool FootprintPolygon::contains(const Vec2& p) const {
  const size_t n = vertices.size();
  if (n < 3) return false;
  bool inside = false;
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = vertices[i];
    const Vec2& b = vertices[j];
    // Boundary check: point on segment counts as inside.
    const double cross = (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x());
    if (std::abs(cross) < 1e-12 &&
        p.x() >= std::min(a.x(), b.x()) - 1e-12 && p.x() <= std::max(a.x(), b.x()) + 1e-12 &&
        p.y() >= std::min(a.y(), b.y()) - 1e-12 && p.y() <= std::max(a.y(), b.y()) + 1e-12)
      return true;
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

size_t OccupancyGrid2D::count(Cell c) const {
  size_t n = 0;
  for (Cell v : cells)
    if (v == c) ++n;
  return n;
}

}  // namespace dynsim
