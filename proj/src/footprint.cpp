#include "dynsim/footprint.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>

#include "dynsim/error.hpp"
#include "dynsim/tri_intersect.hpp"

namespace dynsim {

Rect2D enclosing_rectangle(const TriMesh& mesh) {
  if (mesh.vertices.empty()) throw InvalidInput("enclosing_rectangle: empty mesh");
  Rect2D r;
  r.min = Vec2(mesh.vertices[0].x(), mesh.vertices[0].y());
  r.max = r.min;
  for (const auto& v : mesh.vertices) {
    r.min.x() = std::min(r.min.x(), v.x());
    r.min.y() = std::min(r.min.y(), v.y());
    r.max.x() = std::max(r.max.x(), v.x());
    r.max.y() = std::max(r.max.y(), v.y());
  }
  return r;
}

std::vector<Vec2> convex_hull_2d(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) { return a == b; }),
            pts.end());
  const size_t n = pts.size();
  if (n < 3) return pts;

  auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Vec2> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;  // CCW
}

namespace {

bool all_angles_right(const std::vector<Vec2>& poly, double tol_deg) {
  const size_t n = poly.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[(i + n - 1) % n] - poly[i];
    const Vec2 b = poly[(i + 1) % n] - poly[i];
    const double cosang = a.dot(b) / (a.norm() * b.norm());
    const double ang = std::acos(std::clamp(cosang, -1.0, 1.0)) * 180.0 / std::numbers::pi;
    if (std::abs(ang - 90.0) > tol_deg) return false;
  }
  return true;
}

struct GridIndex {
  int i, j;
  bool operator<(const GridIndex& o) const { return i != o.i ? i < o.i : j < o.j; }
  bool operator==(const GridIndex&) const = default;
};

/// Traces the outer boundary loop of the largest 4-connected occupied
/// component. Returns an empty list when the region is disconnected or
/// the loop pinches (revisits a vertex).
std::vector<Vec2> trace_boundary(const OccupancyGrid2D& grid) {
  const int nx = grid.nx, ny = grid.ny;
  auto occupied = [&](int i, int j) {
    return i >= 0 && j >= 0 && i < nx && j < ny && grid.at(i, j) == Cell::Occupied;
  };

  // Connectivity check (4-neighborhood flood fill from the first occupied cell).
  std::vector<uint8_t> seen(static_cast<size_t>(nx) * ny, 0);
  int total = 0, first_i = -1, first_j = -1;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      if (occupied(i, j)) {
        ++total;
        if (first_i < 0) {
          first_i = i;
          first_j = j;
        }
      }
  if (total == 0) return {};
  {
    std::vector<GridIndex> stack{{first_i, first_j}};
    seen[static_cast<size_t>(first_j) * nx + first_i] = 1;
    int reached = 0;
    while (!stack.empty()) {
      const GridIndex c = stack.back();
      stack.pop_back();
      ++reached;
      const GridIndex nbr[4] = {{c.i + 1, c.j}, {c.i - 1, c.j}, {c.i, c.j + 1}, {c.i, c.j - 1}};
      for (const GridIndex& nn : nbr)
        if (occupied(nn.i, nn.j) && !seen[static_cast<size_t>(nn.j) * nx + nn.i]) {
          seen[static_cast<size_t>(nn.j) * nx + nn.i] = 1;
          stack.push_back(nn);
        }
    }
    if (reached != total) return {};  // disconnected footprint
  }

  // Directed cell-edge segments with the occupied side on the left.
  // Vertices live on the (nx+1) x (ny+1) corner lattice.
  struct Dir {
    int dx, dy;
  };
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> outgoing;
  auto add_edge = [&](int x0, int y0, int x1, int y1) {
    outgoing[{x0, y0}].push_back({x1, y1});
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      if (!occupied(i, j)) continue;
      if (!occupied(i, j - 1)) add_edge(i, j, i + 1, j);          // bottom, +x
      if (!occupied(i + 1, j)) add_edge(i + 1, j, i + 1, j + 1);  // right, +y
      if (!occupied(i, j + 1)) add_edge(i + 1, j + 1, i, j + 1);  // top, -x
      if (!occupied(i - 1, j)) add_edge(i, j + 1, i, j);          // left, -y
    }

  // Walk the loop containing the lowest-leftmost boundary vertex; that
  // vertex is on the outer boundary by construction.
  std::pair<int, int> start = outgoing.begin()->first;
  std::pair<int, int> cur = start;
  std::pair<int, int> prev_dir{0, 0};
  std::vector<Vec2> loop;
  std::map<std::pair<int, int>, int> visits;
  while (true) {
    if (++visits[cur] > 1) return {};  // pinched region: not a simple polygon
    loop.push_back(grid.origin +
                   Vec2(cur.first * grid.resolution, cur.second * grid.resolution));
    auto it = outgoing.find(cur);
    if (it == outgoing.end() || it->second.empty()) return {};
    std::pair<int, int> next = it->second.front();
    if (it->second.size() > 1) {
      // Checkerboard corner: prefer the left turn to hug this component.
      auto turn_score = [&](const std::pair<int, int>& cand) {
        const int dx = cand.first - cur.first, dy = cand.second - cur.second;
        // cross(prev_dir, dir) > 0 = left turn
        return prev_dir.first * dy - prev_dir.second * dx;
      };
      next = *std::max_element(it->second.begin(), it->second.end(),
                               [&](const auto& a, const auto& b) {
                                 return turn_score(a) < turn_score(b);
                               });
    }
    auto& vec = it->second;
    vec.erase(std::find(vec.begin(), vec.end(), next));
    prev_dir = {next.first - cur.first, next.second - cur.second};
    cur = next;
    if (cur == start) break;
  }
  if (loop.size() < 4) return {};

  // Collapse collinear runs (all edges are axis-aligned).
  std::vector<Vec2> out;
  const size_t n = loop.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& prev = loop[(i + n - 1) % n];
    const Vec2& here = loop[i];
    const Vec2& next = loop[(i + 1) % n];
    const Vec2 d0 = here - prev;
    const Vec2 d1 = next - here;
    if (d0.x() * d1.y() - d0.y() * d1.x() != 0) out.push_back(here);
  }
  return out;
}

}  // namespace

FootprintPolygon enclosing_polygon(const TriMesh& mesh, double refine_cell,
                                   double angle_tol_deg) {
  if (mesh.vertices.empty()) throw InvalidInput("enclosing_polygon: empty mesh");
  std::vector<Vec2> pts;
  pts.reserve(mesh.vertices.size());
  for (const auto& v : mesh.vertices) pts.emplace_back(v.x(), v.y());
  std::vector<Vec2> hull = convex_hull_2d(std::move(pts));

  FootprintPolygon poly;
  if (all_angles_right(hull, angle_tol_deg)) {
    poly.vertices = hull;
    poly.is_convex = true;
    return poly;
  }

  const auto zspan = mesh.aabb();
  OccupancyGrid2D grid =
      rasterize_occupancy(mesh, zspan.min().z() - 1.0, zspan.max().z() + 1.0, refine_cell);
  std::vector<Vec2> traced = trace_boundary(grid);
  if (traced.empty()) {
    poly.vertices = hull;  // fallback keeps the containment invariant
    poly.is_convex = true;
    return poly;
  }
  poly.vertices = std::move(traced);
  // Convex iff every turn of the CCW loop is a left turn.
  poly.is_convex = [&] {
    const size_t n = poly.vertices.size();
    for (size_t i = 0; i < n; ++i) {
      const Vec2 d0 = poly.vertices[i] - poly.vertices[(i + n - 1) % n];
      const Vec2 d1 = poly.vertices[(i + 1) % n] - poly.vertices[i];
      if (d0.x() * d1.y() - d0.y() * d1.x() < 0) return false;
    }
    return true;
  }();
  return poly;
}

OccupancyGrid2D rasterize_occupancy(const TriMesh& mesh, double z_low, double z_high,
                                    double resolution) {
  if (resolution <= 0) throw InvalidInput("rasterize_occupancy: resolution must be > 0");
  if (z_low >= z_high) throw InvalidInput("rasterize_occupancy: z band is empty");
  const Rect2D rect = enclosing_rectangle(mesh);

  OccupancyGrid2D grid;
  grid.resolution = resolution;
  grid.origin = rect.min;
  grid.nx = std::max(1, static_cast<int>(std::ceil(rect.width() / resolution - 1e-9)));
  grid.ny = std::max(1, static_cast<int>(std::ceil(rect.height() / resolution - 1e-9)));
  grid.cells.assign(static_cast<size_t>(grid.nx) * grid.ny, Cell::Free);

  const double zc = 0.5 * (z_low + z_high);
  const double zh = 0.5 * (z_high - z_low);
  for (size_t t = 0; t < mesh.triangle_count(); ++t) {
    const Vec3 a = mesh.tri_vertex(t, 0);
    const Vec3 b = mesh.tri_vertex(t, 1);
    const Vec3 c = mesh.tri_vertex(t, 2);
    if (std::max({a.z(), b.z(), c.z()}) < z_low || std::min({a.z(), b.z(), c.z()}) > z_high)
      continue;
    const double xlo = std::min({a.x(), b.x(), c.x()});
    const double xhi = std::max({a.x(), b.x(), c.x()});
    const double ylo = std::min({a.y(), b.y(), c.y()});
    const double yhi = std::max({a.y(), b.y(), c.y()});
    const int i0 = std::clamp(static_cast<int>(std::floor((xlo - grid.origin.x()) / resolution)),
                              0, grid.nx - 1);
    const int i1 = std::clamp(static_cast<int>(std::floor((xhi - grid.origin.x()) / resolution)),
                              0, grid.nx - 1);
    const int j0 = std::clamp(static_cast<int>(std::floor((ylo - grid.origin.y()) / resolution)),
                              0, grid.ny - 1);
    const int j1 = std::clamp(static_cast<int>(std::floor((yhi - grid.origin.y()) / resolution)),
                              0, grid.ny - 1);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) {
        if (grid.at(i, j) == Cell::Occupied) continue;
        const Vec3 center(grid.origin.x() + (i + 0.5) * resolution,
                          grid.origin.y() + (j + 0.5) * resolution, zc);
        const Vec3 half(0.5 * resolution, 0.5 * resolution, zh);
        if (tri_box_overlap(center, half, a, b, c)) grid.at(i, j) = Cell::Occupied;
      }
  }
  return grid;
}

void mask_outside(OccupancyGrid2D& grid, const FootprintPolygon& poly) {
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      if (!poly.contains(grid.cell_center(i, j))) grid.at(i, j) = Cell::Unknown;
}

void write_pgm(const OccupancyGrid2D& grid, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InvalidInput(fmt::format("cannot write PGM '{}'", path));
  f << "P5\n" << grid.nx << " " << grid.ny << "\n255\n";
  for (int j = grid.ny - 1; j >= 0; --j)
    for (int i = 0; i < grid.nx; ++i) {
      uint8_t v = 205;
      switch (grid.at(i, j)) {
        case Cell::Occupied: v = 0; break;
        case Cell::Free: v = 254; break;
        case Cell::Unknown: v = 205; break;
      }
      f.put(static_cast<char>(v));
    }
  std::ofstream meta(path + ".meta", std::ios::trunc);
  meta << fmt::format("resolution: {:.17g}\norigin: {:.17g} {:.17g}\nwidth: {}\nheight: {}\n",
                      grid.resolution, grid.origin.x(), grid.origin.y(), grid.nx, grid.ny);
}

}  // namespace dynsim
