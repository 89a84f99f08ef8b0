#include "dynsim/tri_intersect.hpp"

#include <algorithm>
#include <cmath>

namespace dynsim {

namespace {

// --- coplanar case: project to the dominant plane and run 2D tests ----

double orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  return p.x() >= std::min(a.x(), b.x()) && p.x() <= std::max(a.x(), b.x()) &&
         p.y() >= std::min(a.y(), b.y()) && p.y() <= std::max(a.y(), b.y());
}

bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const double d1 = orient2d(q1, q2, p1);
  const double d2 = orient2d(q1, q2, p2);
  const double d3 = orient2d(p1, p2, q1);
  const double d4 = orient2d(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

bool point_in_tri_2d(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  const double d1 = orient2d(a, b, p);
  const double d2 = orient2d(b, c, p);
  const double d3 = orient2d(c, a, p);
  const bool has_neg = (d1 < 0) || (d2 < 0) || (d3 < 0);
  const bool has_pos = (d1 > 0) || (d2 > 0) || (d3 > 0);
  return !(has_neg && has_pos);
}

bool coplanar_tri_tri(const Vec3& n, const Vec3& v0, const Vec3& v1, const Vec3& v2,
                      const Vec3& u0, const Vec3& u1, const Vec3& u2) {
  // Project to the plane where |n| is largest.
  int i0 = 0, i1 = 1;
  const Vec3 an = n.cwiseAbs();
  if (an.x() >= an.y() && an.x() >= an.z()) {
    i0 = 1;
    i1 = 2;
  } else if (an.y() >= an.z()) {
    i0 = 0;
    i1 = 2;
  }
  const Vec2 a(v0[i0], v0[i1]), b(v1[i0], v1[i1]), c(v2[i0], v2[i1]);
  const Vec2 d(u0[i0], u0[i1]), e(u1[i0], u1[i1]), f(u2[i0], u2[i1]);

  const Vec2 t1[3] = {a, b, c};
  const Vec2 t2[3] = {d, e, f};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (segments_intersect(t1[i], t1[(i + 1) % 3], t2[j], t2[(j + 1) % 3])) return true;
  if (point_in_tri_2d(a, d, e, f)) return true;
  if (point_in_tri_2d(d, a, b, c)) return true;
  return false;
}

struct Interval {
  double a, b, c, x0, x1;
  bool coplanar = false;
};

// Sets up one triangle's scaled interval on the intersection line,
// following the no-division formulation.
Interval compute_interval(double p0, double p1, double p2, double d0, double d1,
                          double d2, double d0d1, double d0d2) {
  Interval r;
  if (d0d1 > 0) {  // d0,d1 on one side, d2 on the other (or on the plane)
    r = {p2, (p0 - p2) * d2, (p1 - p2) * d2, d2 - d0, d2 - d1};
  } else if (d0d2 > 0) {
    r = {p1, (p0 - p1) * d1, (p2 - p1) * d1, d1 - d0, d1 - d2};
  } else if (d1 * d2 > 0 || d0 != 0) {
    r = {p0, (p1 - p0) * d0, (p2 - p0) * d0, d0 - d1, d0 - d2};
  } else if (d1 != 0) {
    r = {p1, (p0 - p1) * d1, (p2 - p1) * d1, d1 - d0, d1 - d2};
  } else if (d2 != 0) {
    r = {p2, (p0 - p2) * d2, (p1 - p2) * d2, d2 - d0, d2 - d1};
  } else {
    r.coplanar = true;
  }
  return r;
}

}  // namespace

bool tri_tri_intersect(const Vec3& v0, const Vec3& v1, const Vec3& v2,
                       const Vec3& u0, const Vec3& u1, const Vec3& u2) {
  const Vec3 n1 = (v1 - v0).cross(v2 - v0);
  const double d1 = -n1.dot(v0);
  const double du0 = n1.dot(u0) + d1;
  const double du1 = n1.dot(u1) + d1;
  const double du2 = n1.dot(u2) + d1;
  const double du0du1 = du0 * du1;
  const double du0du2 = du0 * du2;
  if (du0du1 > 0 && du0du2 > 0) return false;

  const Vec3 n2 = (u1 - u0).cross(u2 - u0);
  const double d2 = -n2.dot(u0);
  const double dv0 = n2.dot(v0) + d2;
  const double dv1 = n2.dot(v1) + d2;
  const double dv2 = n2.dot(v2) + d2;
  const double dv0dv1 = dv0 * dv1;
  const double dv0dv2 = dv0 * dv2;
  if (dv0dv1 > 0 && dv0dv2 > 0) return false;

  const Vec3 dir = n1.cross(n2);
  int index = 0;
  const Vec3 ad = dir.cwiseAbs();
  if (ad.y() > ad.x()) index = 1;
  if (ad.z() > ad[index]) index = 2;

  const Interval iv =
      compute_interval(v0[index], v1[index], v2[index], dv0, dv1, dv2, dv0dv1, dv0dv2);
  const Interval iu =
      compute_interval(u0[index], u1[index], u2[index], du0, du1, du2, du0du1, du0du2);
  if (iv.coplanar || iu.coplanar) return coplanar_tri_tri(n1, v0, v1, v2, u0, u1, u2);

  const double xx = iv.x0 * iv.x1;
  const double yy = iu.x0 * iu.x1;
  const double xxyy = xx * yy;

  double isect1[2], isect2[2];
  double tmp = iv.a * xxyy;
  isect1[0] = tmp + iv.b * iv.x1 * yy;
  isect1[1] = tmp + iv.c * iv.x0 * yy;
  tmp = iu.a * xxyy;
  isect2[0] = tmp + iu.b * xx * iu.x1;
  isect2[1] = tmp + iu.c * xx * iu.x0;

  if (isect1[0] > isect1[1]) std::swap(isect1[0], isect1[1]);
  if (isect2[0] > isect2[1]) std::swap(isect2[0], isect2[1]);
  return !(isect1[1] < isect2[0] || isect2[1] < isect1[0]);
}

bool ray_tri_intersect(const Vec3& orig, const Vec3& dir, const Vec3& v0,
                       const Vec3& v1, const Vec3& v2, double& t) {
  const Vec3 e1 = v1 - v0;
  const Vec3 e2 = v2 - v0;
  const Vec3 pvec = dir.cross(e2);
  const double det = e1.dot(pvec);
  if (det == 0.0) return false;
  const double inv_det = 1.0 / det;
  const Vec3 tvec = orig - v0;
  const double u = tvec.dot(pvec) * inv_det;
  if (u < 0.0 || u > 1.0) return false;
  const Vec3 qvec = tvec.cross(e1);
  const double v = dir.dot(qvec) * inv_det;
  if (v < 0.0 || u + v > 1.0) return false;
  const double hit = e2.dot(qvec) * inv_det;
  if (hit <= 0.0) return false;
  t = hit;
  return true;
}

namespace {

bool plane_box_overlap(const Vec3& normal, const Vec3& vert, const Vec3& maxbox) {
  Vec3 vmin, vmax;
  for (int q = 0; q < 3; ++q) {
    if (normal[q] > 0) {
      vmin[q] = -maxbox[q] - vert[q];
      vmax[q] = maxbox[q] - vert[q];
    } else {
      vmin[q] = maxbox[q] - vert[q];
      vmax[q] = -maxbox[q] - vert[q];
    }
  }
  if (normal.dot(vmin) > 0) return false;
  return normal.dot(vmax) >= 0;
}

}  // namespace

bool tri_box_overlap(const Vec3& box_center, const Vec3& h, const Vec3& tv0,
                     const Vec3& tv1, const Vec3& tv2) {
  const Vec3 v0 = tv0 - box_center;
  const Vec3 v1 = tv1 - box_center;
  const Vec3 v2 = tv2 - box_center;
  const Vec3 e0 = v1 - v0;
  const Vec3 e1 = v2 - v1;
  const Vec3 e2 = v0 - v2;

  // 9 cross-axis tests.
  {
    const Vec3 fe = e0.cwiseAbs();
    // axis = e0 x X, Y, Z
    {
      const double p0 = e0.z() * v0.y() - e0.y() * v0.z();
      const double p2 = e0.z() * v2.y() - e0.y() * v2.z();
      const double rad = fe.z() * h.y() + fe.y() * h.z();
      if (std::min(p0, p2) > rad || std::max(p0, p2) < -rad) return false;
    }
    {
      const double p0 = -e0.z() * v0.x() + e0.x() * v0.z();
      const double p2 = -e0.z() * v2.x() + e0.x() * v2.z();
      const double rad = fe.z() * h.x() + fe.x() * h.z();
      if (std::min(p0, p2) > rad || std::max(p0, p2) < -rad) return false;
    }
    {
      const double p1 = e0.y() * v1.x() - e0.x() * v1.y();
      const double p2 = e0.y() * v2.x() - e0.x() * v2.y();
      const double rad = fe.y() * h.x() + fe.x() * h.y();
      if (std::min(p1, p2) > rad || std::max(p1, p2) < -rad) return false;
    }
  }
  {
    const Vec3 fe = e1.cwiseAbs();
    {
      const double p0 = e1.z() * v0.y() - e1.y() * v0.z();
      const double p2 = e1.z() * v2.y() - e1.y() * v2.z();
      const double rad = fe.z() * h.y() + fe.y() * h.z();
      if (std::min(p0, p2) > rad || std::max(p0, p2) < -rad) return false;
    }
    {
      const double p0 = -e1.z() * v0.x() + e1.x() * v0.z();
      const double p2 = -e1.z() * v2.x() + e1.x() * v2.z();
      const double rad = fe.z() * h.x() + fe.x() * h.z();
      if (std::min(p0, p2) > rad || std::max(p0, p2) < -rad) return false;
    }
    {
      const double p0 = e1.y() * v0.x() - e1.x() * v0.y();
      const double p1 = e1.y() * v1.x() - e1.x() * v1.y();
      const double rad = fe.y() * h.x() + fe.x() * h.y();
      if (std::min(p0, p1) > rad || std::max(p0, p1) < -rad) return false;
    }
  }
  {
    const Vec3 fe = e2.cwiseAbs();
    {
      const double p0 = e2.z() * v0.y() - e2.y() * v0.z();
      const double p1 = e2.z() * v1.y() - e2.y() * v1.z();
      const double rad = fe.z() * h.y() + fe.y() * h.z();
      if (std::min(p0, p1) > rad || std::max(p0, p1) < -rad) return false;
    }
    {
      const double p0 = -e2.z() * v0.x() + e2.x() * v0.z();
      const double p1 = -e2.z() * v1.x() + e2.x() * v1.z();
      const double rad = fe.z() * h.x() + fe.x() * h.z();
      if (std::min(p0, p1) > rad || std::max(p0, p1) < -rad) return false;
    }
    {
      const double p1 = e2.y() * v1.x() - e2.x() * v1.y();
      const double p2 = e2.y() * v2.x() - e2.x() * v2.y();
      const double rad = fe.y() * h.x() + fe.x() * h.y();
      if (std::min(p1, p2) > rad || std::max(p1, p2) < -rad) return false;
    }
  }

  // AABB of the triangle vs the box.
  for (int q = 0; q < 3; ++q) {
    const double lo = std::min({v0[q], v1[q], v2[q]});
    const double hi = std::max({v0[q], v1[q], v2[q]});
    if (lo > h[q] || hi < -h[q]) return false;
  }

  // Triangle plane vs box.
  const Vec3 normal = e0.cross(e1);
  return plane_box_overlap(normal, v0, h);
}

bool tri_rect_overlap_2d(const Vec2& a, const Vec2& b, const Vec2& c,
                         const Vec2& rmin, const Vec2& rmax) {
  // SAT axes: rect x/y plus the three edge normals of the triangle.
  const double tlx = std::min({a.x(), b.x(), c.x()});
  const double thx = std::max({a.x(), b.x(), c.x()});
  if (thx < rmin.x() || tlx > rmax.x()) return false;
  const double tly = std::min({a.y(), b.y(), c.y()});
  const double thy = std::max({a.y(), b.y(), c.y()});
  if (thy < rmin.y() || tly > rmax.y()) return false;

  const Vec2 tri[3] = {a, b, c};
  const Vec2 corners[4] = {rmin, {rmax.x(), rmin.y()}, rmax, {rmin.x(), rmax.y()}};
  for (int i = 0; i < 3; ++i) {
    const Vec2 e = tri[(i + 1) % 3] - tri[i];
    const Vec2 n(-e.y(), e.x());
    if (n.x() == 0 && n.y() == 0) continue;  // degenerate edge
    double tmin = 1e300, tmax = -1e300;
    for (const Vec2& v : tri) {
      const double p = n.dot(v);
      tmin = std::min(tmin, p);
      tmax = std::max(tmax, p);
    }
    double rlo = 1e300, rhi = -1e300;
    for (const Vec2& v : corners) {
      const double p = n.dot(v);
      rlo = std::min(rlo, p);
      rhi = std::max(rhi, p);
    }
    if (tmax < rlo || tmin > rhi) return false;
  }
  return true;
}

}  // namespace dynsim
