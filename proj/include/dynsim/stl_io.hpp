#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dynsim/mesh.hpp"

namespace dynsim {

inline constexpr double kWeldTolerance = 1e-6;       // m
inline constexpr double kDegenerateArea = 1e-12;     // m^2

/// Parses binary or ASCII STL. Duplicate vertices are welded at
/// kWeldTolerance, degenerate triangles (area <= kDegenerateArea or
/// repeated indices after welding) are dropped.
/// Throws ParseError (with byte offset) on truncated/malformed input.
TriMesh load_stl(std::span<const uint8_t> bytes);
TriMesh load_stl_file(const std::string& path);

/// Binary STL writer (deterministic byte layout).
std::vector<uint8_t> save_stl(const TriMesh& mesh);
void save_stl_file(const TriMesh& mesh, const std::string& path);

/// Welds near-duplicate vertices (per-axis distance <= tol) and drops
/// degenerate triangles. First occurrence wins; order is preserved.
TriMesh weld_mesh(const TriMesh& raw, double tol = kWeldTolerance);

}  // namespace dynsim
