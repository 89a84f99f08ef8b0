#pragma once

#include "dynsim/mesh.hpp"

namespace dynsim {

/// Möller interval test (no-division variant) with coplanar fallback.
/// Touching triangles (shared point/edge, zero penetration) count as
/// intersecting. Fully deterministic: identical inputs give identical
/// results, which the contact-count oracle agreement relies on.
bool tri_tri_intersect(const Vec3& v0, const Vec3& v1, const Vec3& v2,
                       const Vec3& u0, const Vec3& u1, const Vec3& u2);

/// Möller-Trumbore. `dir` need not be normalized; `t` is returned in
/// multiples of `dir`. Edge/vertex hits count. Returns false for t <= 0.
bool ray_tri_intersect(const Vec3& orig, const Vec3& dir, const Vec3& v0,
                       const Vec3& v1, const Vec3& v2, double& t);

/// Akenine-Möller SAT. Touching counts as overlap.
bool tri_box_overlap(const Vec3& box_center, const Vec3& box_half,
                     const Vec3& v0, const Vec3& v1, const Vec3& v2);

/// 2D SAT for a (possibly degenerate) projected triangle vs an
/// axis-aligned rectangle. Touching counts.
bool tri_rect_overlap_2d(const Vec2& a, const Vec2& b, const Vec2& c,
                         const Vec2& rect_min, const Vec2& rect_max);

}  // namespace dynsim
