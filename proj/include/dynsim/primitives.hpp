#pragma once

#include "dynsim/mesh.hpp"
#include "dynsim/rng.hpp"

namespace dynsim {

/// 12-triangle closed box, outward winding.
TriMesh make_box(const Vec3& center, const Vec3& size);

/// UV ellipsoid (rings x segments latitude/longitude tessellation).
TriMesh make_ellipsoid(const Vec3& center, const Vec3& semi_axes, int segments = 12,
                       int rings = 8);

/// Vertical capsule: cylinder of `height` total (caps included) and given
/// radius, base at z=0.
TriMesh make_capsule(double radius, double height, int segments = 10, int rings = 4);

struct RoomParams {
  Vec2 inner_size{8.0, 6.0};
  double wall_height = 2.6;
  double wall_thickness = 0.15;
  double floor_thickness = 0.15;
  bool has_ceiling = true;
  bool l_shaped = false;        // cut a quadrant out of the +x/+y corner
  Vec2 l_cut{3.0, 2.5};         // size of the cut (l_shaped only)
  int furniture = 4;            // boxes dropped on the floor
  double opening_width = 0.0;   // >0 carves a full-height opening in the +x wall
};

/// Procedural room mesh: floor slab (top face at z=0), walls, optional
/// ceiling, optional L-cut, seeded furniture boxes. Interior spans
/// x,y in [0, inner_size] minus the L-cut.
TriMesh make_room(const RoomParams& params, Rng& rng);

/// Randomized small room for experiment generation. Draws size, shape,
/// furniture count and an optional wall opening from `rng`.
TriMesh make_random_room(Rng& rng, RoomParams* out_params = nullptr);

}  // namespace dynsim
