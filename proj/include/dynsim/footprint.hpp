#pragma once

#include <string>

#include "dynsim/mesh.hpp"

namespace dynsim {

/// Axis-aligned bounding rectangle of the mesh projected on the ground plane.
Rect2D enclosing_rectangle(const TriMesh& mesh);

/// 2D convex hull of the projected vertices (CCW, collinear points removed).
std::vector<Vec2> convex_hull_2d(std::vector<Vec2> points);

/// Ground-plane outline of the mesh. Returns the convex hull when all of
/// its interior angles are 90 deg within `angle_tol_deg`; otherwise a
/// rectilinear refinement traced from the rasterized footprint at
/// `refine_cell` resolution. Falls back to the hull when the footprint is
/// disconnected or pinched (a traced loop revisiting a vertex cannot be a
/// simple polygon).
FootprintPolygon enclosing_polygon(const TriMesh& mesh, double refine_cell = 0.05,
                                   double angle_tol_deg = 1.0);

/// Cell occupied iff any triangle intersects the cell's vertical prism
/// clipped to [z_low, z_high]; every other cell is free. The grid covers
/// enclosing_rectangle(mesh).
OccupancyGrid2D rasterize_occupancy(const TriMesh& mesh, double z_low, double z_high,
                                    double resolution);

/// Marks cells whose centers fall outside `poly` as Unknown.
void mask_outside(OccupancyGrid2D& grid, const FootprintPolygon& poly);

/// P5 PGM export: occupied=0, free=254, unknown=205. Row 0 of the image is
/// the row with the highest y. A sidecar "<path>.meta" text file records
/// resolution and origin.
void write_pgm(const OccupancyGrid2D& grid, const std::string& path);

}  // namespace dynsim
