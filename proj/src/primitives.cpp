#include "dynsim/primitives.hpp"

#include <cmath>
#include <numbers>

namespace dynsim {

TriMesh make_box(const Vec3& center, const Vec3& size) {
  const Vec3 h = 0.5 * size;
  TriMesh m;
  m.vertices = {
      center + Vec3(-h.x(), -h.y(), -h.z()), center + Vec3(h.x(), -h.y(), -h.z()),
      center + Vec3(h.x(), h.y(), -h.z()),   center + Vec3(-h.x(), h.y(), -h.z()),
      center + Vec3(-h.x(), -h.y(), h.z()),  center + Vec3(h.x(), -h.y(), h.z()),
      center + Vec3(h.x(), h.y(), h.z()),    center + Vec3(-h.x(), h.y(), h.z())};
  m.triangles = {{0, 2, 1}, {0, 3, 2},   // bottom (-z)
                 {4, 5, 6}, {4, 6, 7},   // top (+z)
                 {0, 1, 5}, {0, 5, 4},   // -y
                 {2, 3, 7}, {2, 7, 6},   // +y
                 {1, 2, 6}, {1, 6, 5},   // +x
                 {3, 0, 4}, {3, 4, 7}};  // -x
  return m;
}

TriMesh make_ellipsoid(const Vec3& center, const Vec3& r, int segments, int rings) {
  TriMesh m;
  const double pi = std::numbers::pi;
  m.vertices.push_back(center + Vec3(0, 0, -r.z()));  // south pole
  for (int j = 1; j < rings; ++j) {
    const double phi = pi * j / rings - pi / 2;  // latitude
    for (int i = 0; i < segments; ++i) {
      const double th = 2 * pi * i / segments;
      m.vertices.push_back(center + Vec3(r.x() * std::cos(phi) * std::cos(th),
                                         r.y() * std::cos(phi) * std::sin(th),
                                         r.z() * std::sin(phi)));
    }
  }
  m.vertices.push_back(center + Vec3(0, 0, r.z()));  // north pole
  const uint32_t north = static_cast<uint32_t>(m.vertices.size() - 1);

  auto ring_vert = [&](int j, int i) {
    return static_cast<uint32_t>(1 + (j - 1) * segments + (i % segments));
  };
  for (int i = 0; i < segments; ++i) m.triangles.push_back({0, ring_vert(1, i + 1), ring_vert(1, i)});
  for (int j = 1; j < rings - 1; ++j)
    for (int i = 0; i < segments; ++i) {
      const uint32_t a = ring_vert(j, i), b = ring_vert(j, i + 1);
      const uint32_t c = ring_vert(j + 1, i), d = ring_vert(j + 1, i + 1);
      m.triangles.push_back({a, b, d});
      m.triangles.push_back({a, d, c});
    }
  for (int i = 0; i < segments; ++i)
    m.triangles.push_back({north, ring_vert(rings - 1, i), ring_vert(rings - 1, i + 1)});
  return m;
}

TriMesh make_capsule(double radius, double height, int segments, int rings) {
  // Squash an ellipsoid's caps and stretch the middle: simplest watertight
  // capsule for low-poly procedural bodies.
  const double cyl = std::max(height - 2 * radius, 0.0);
  TriMesh m = make_ellipsoid(Vec3(0, 0, 0), Vec3(radius, radius, radius), segments, 2 * rings);
  for (auto& v : m.vertices) {
    if (v.z() > 0)
      v.z() += cyl;  // upper hemisphere raised; lower stays
  }
  m.translate(Vec3(0, 0, radius));  // base at z=0
  return m;
}

namespace {

// Walls sit on the outside of a CCW interior outline; segment ends are
// extended by one thickness where they meet a corner so outside corners
// close up (overlaps are harmless, the mesh is a plain concatenation).
void add_wall(TriMesh& room, const Vec2& from, const Vec2& to, double thickness,
              double height, double opening_width) {
  const Vec2 d = to - from;
  const double len = d.norm();
  const Vec2 dir = d / len;
  const Vec2 outward(dir.y(), -dir.x());  // right of dir; interior is left (CCW)
  auto seg = [&](double s0, double s1) {
    const Vec2 mid = from + dir * (0.5 * (s0 + s1)) + outward * (0.5 * thickness);
    const double L = s1 - s0;
    const Vec3 size = std::abs(dir.x()) > std::abs(dir.y())
                          ? Vec3(L, thickness, height)
                          : Vec3(thickness, L, height);
    room.append(make_box(Vec3(mid.x(), mid.y(), 0.5 * height), size));
  };
  if (opening_width > 0 && opening_width < len - 0.2) {
    const double a = 0.5 * (len - opening_width);
    seg(-thickness, a);
    seg(len - a, len + thickness);
  } else {
    seg(-thickness, len + thickness);
  }
}

}  // namespace

TriMesh make_room(const RoomParams& p, Rng& rng) {
  TriMesh room;
  const double W = p.inner_size.x();
  const double H = p.inner_size.y();
  const double t = p.wall_thickness;

  auto slab = [&](double x0, double y0, double x1, double y1, double z0, double z1) {
    room.append(make_box(Vec3(0.5 * (x0 + x1), 0.5 * (y0 + y1), 0.5 * (z0 + z1)),
                         Vec3(x1 - x0, y1 - y0, z1 - z0)));
  };

  // Floor (top face exactly at z=0) and ceiling, following the L-cut.
  const double cx = W - p.l_cut.x();
  const double cy = H - p.l_cut.y();
  auto horizontal_slabs = [&](double z0, double z1) {
    if (!p.l_shaped) {
      slab(-t, -t, W + t, H + t, z0, z1);
    } else {
      slab(-t, -t, W + t, cy + t, z0, z1);
      slab(-t, cy + t, cx + t, H + t, z0, z1);
    }
  };
  horizontal_slabs(-p.floor_thickness, 0.0);
  if (p.has_ceiling) horizontal_slabs(p.wall_height, p.wall_height + t);

  if (!p.l_shaped) {
    add_wall(room, Vec2(0, 0), Vec2(W, 0), t, p.wall_height, 0);
    add_wall(room, Vec2(W, 0), Vec2(W, H), t, p.wall_height, p.opening_width);
    add_wall(room, Vec2(W, H), Vec2(0, H), t, p.wall_height, 0);
    add_wall(room, Vec2(0, H), Vec2(0, 0), t, p.wall_height, 0);
  } else {
    // CCW outline with the +x/+y quadrant removed.
    const Vec2 pts[6] = {{0, 0}, {W, 0}, {W, cy}, {cx, cy}, {cx, H}, {0, H}};
    for (int i = 0; i < 6; ++i)
      add_wall(room, pts[i], pts[(i + 1) % 6], t,
               p.wall_height, i == 1 ? p.opening_width : 0);
  }

  for (int f = 0; f < p.furniture; ++f) {
    const double sx = rng.uniform(0.4, 1.2);
    const double sy = rng.uniform(0.4, 1.2);
    const double sz = rng.uniform(0.4, 1.1);
    double x, y;
    do {
      x = rng.uniform(0.5, W - 0.5);
      y = rng.uniform(0.5, H - 0.5);
    } while (p.l_shaped && x > W - p.l_cut.x() - 0.7 && y > H - p.l_cut.y() - 0.7);
    room.append(make_box(Vec3(x, y, sz / 2), Vec3(sx, sy, sz)));
  }
  return room;
}

TriMesh make_random_room(Rng& rng, RoomParams* out_params) {
  RoomParams p;
  p.inner_size = Vec2(rng.uniform(6.0, 10.0), rng.uniform(5.0, 8.0));
  p.l_shaped = rng.uniform() < 0.35;
  if (p.l_shaped)
    p.l_cut = Vec2(rng.uniform(2.0, p.inner_size.x() * 0.45),
                   rng.uniform(2.0, p.inner_size.y() * 0.45));
  p.furniture = static_cast<int>(rng.uniform_int(int64_t{3}, int64_t{8}));
  p.opening_width = rng.uniform() < 0.5 ? rng.uniform(0.8, 1.6) : 0.0;
  if (out_params) *out_params = p;
  return make_room(p, rng);
}

}  // namespace dynsim
