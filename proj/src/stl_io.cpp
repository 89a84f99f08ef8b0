#include "dynsim/stl_io.hpp"

#include <fmt/format.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <unordered_map>

#include "dynsim/error.hpp"

static_assert(std::endian::native == std::endian::little,
              "STL and log containers assume a little-endian host");

namespace dynsim {

namespace {

float read_f32(const uint8_t* p) {
  float v;
  std::memcpy(&v, p, 4);
  return v;
}

uint32_t read_u32(const uint8_t* p) {
  uint32_t v;
  std::memcpy(&v, p, 4);
  return v;
}

struct CellKey {
  int64_t x, y, z;
  bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
  size_t operator()(const CellKey& k) const {
    size_t h = std::hash<int64_t>()(k.x);
    h = h * 1000003u ^ std::hash<int64_t>()(k.y);
    h = h * 1000003u ^ std::hash<int64_t>()(k.z);
    return h;
  }
};

bool looks_ascii(std::span<const uint8_t> bytes) {
  // "solid" prefix alone is unreliable (binary exporters use it too);
  // require a "facet" token in the leading chunk as well.
  if (bytes.size() < 5 || std::memcmp(bytes.data(), "solid", 5) != 0) return false;
  const size_t probe = std::min<size_t>(bytes.size(), 512);
  const std::string head(reinterpret_cast<const char*>(bytes.data()), probe);
  return head.find("facet") != std::string::npos ||
         head.find("endsolid") != std::string::npos;
}

TriMesh parse_binary(std::span<const uint8_t> bytes) {
  if (bytes.size() < 84)
    throw ParseError(fmt::format("binary STL truncated: {} bytes, need 84-byte prologue",
                                 bytes.size()),
                     bytes.size());
  const uint32_t declared = read_u32(bytes.data() + 80);
  TriMesh raw;
  raw.vertices.reserve(static_cast<size_t>(declared) * 3);
  raw.triangles.reserve(declared);
  size_t off = 84;
  for (uint32_t t = 0; t < declared; ++t, off += 50) {
    if (off + 50 > bytes.size())
      throw ParseError(
          fmt::format("binary STL truncated at byte {}: header declares {} triangles, "
                      "buffer holds {}",
                      off, declared, t),
          off);
    const uint8_t* rec = bytes.data() + off;
    const uint32_t base = static_cast<uint32_t>(raw.vertices.size());
    for (int v = 0; v < 3; ++v) {
      const uint8_t* p = rec + 12 + 12 * v;  // skip normal
      raw.vertices.emplace_back(read_f32(p), read_f32(p + 4), read_f32(p + 8));
    }
    raw.triangles.push_back({base, base + 1, base + 2});
  }
  return raw;
}

TriMesh parse_ascii(std::span<const uint8_t> bytes) {
  const char* data = reinterpret_cast<const char*>(bytes.data());
  const size_t n = bytes.size();
  size_t pos = 0;

  auto skip_ws = [&] {
    while (pos < n && std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
  };
  auto next_token = [&]() -> std::string {
    skip_ws();
    const size_t start = pos;
    while (pos < n && !std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
    return std::string(data + start, pos - start);
  };
  auto expect = [&](const char* tok) {
    const size_t at = pos;
    const std::string got = next_token();
    if (got != tok)
      throw ParseError(fmt::format("ASCII STL: expected '{}' at byte {}, got '{}'", tok, at, got),
                       at);
  };
  auto next_double = [&]() -> double {
    skip_ws();
    const size_t at = pos;
    char* end = nullptr;
    const double v = std::strtod(data + pos, &end);
    if (end == data + pos || end > data + n)
      throw ParseError(fmt::format("ASCII STL: expected number at byte {}", at), at);
    pos = static_cast<size_t>(end - data);
    return v;
  };

  expect("solid");
  // Optional name: consume tokens until "facet" or "endsolid".
  skip_ws();
  while (true) {
    const size_t save = pos;
    const std::string tok = next_token();
    if (tok == "facet" || tok == "endsolid") {
      pos = save;
      break;
    }
    if (tok.empty())
      throw ParseError("ASCII STL: unexpected end of input after 'solid'", pos);
  }

  TriMesh raw;
  while (true) {
    const size_t save = pos;
    const std::string tok = next_token();
    if (tok == "endsolid") break;
    if (tok != "facet")
      throw ParseError(fmt::format("ASCII STL: expected 'facet' or 'endsolid' at byte {}", save),
                       save);
    expect("normal");
    next_double();
    next_double();
    next_double();
    expect("outer");
    expect("loop");
    const uint32_t base = static_cast<uint32_t>(raw.vertices.size());
    for (int v = 0; v < 3; ++v) {
      expect("vertex");
      const double x = next_double();
      const double y = next_double();
      const double z = next_double();
      raw.vertices.emplace_back(x, y, z);
    }
    expect("endloop");
    expect("endfacet");
    raw.triangles.push_back({base, base + 1, base + 2});
  }
  return raw;
}

}  // namespace

TriMesh weld_mesh(const TriMesh& raw, double tol) {
  TriMesh out;
  out.asset_id = raw.asset_id;
  std::unordered_map<CellKey, std::vector<uint32_t>, CellKeyHash> grid;
  std::vector<uint32_t> remap(raw.vertices.size());

  auto cell_of = [&](const Vec3& v) {
    return CellKey{static_cast<int64_t>(std::floor(v.x() / tol)),
                   static_cast<int64_t>(std::floor(v.y() / tol)),
                   static_cast<int64_t>(std::floor(v.z() / tol))};
  };

  for (size_t i = 0; i < raw.vertices.size(); ++i) {
    const Vec3& v = raw.vertices[i];
    const CellKey c = cell_of(v);
    uint32_t found = UINT32_MAX;
    for (int64_t dx = -1; dx <= 1 && found == UINT32_MAX; ++dx)
      for (int64_t dy = -1; dy <= 1 && found == UINT32_MAX; ++dy)
        for (int64_t dz = -1; dz <= 1 && found == UINT32_MAX; ++dz) {
          auto it = grid.find({c.x + dx, c.y + dy, c.z + dz});
          if (it == grid.end()) continue;
          for (uint32_t cand : it->second) {
            if ((out.vertices[cand] - v).cwiseAbs().maxCoeff() <= tol) {
              found = cand;
              break;
            }
          }
        }
    if (found == UINT32_MAX) {
      found = static_cast<uint32_t>(out.vertices.size());
      out.vertices.push_back(v);
      grid[c].push_back(found);
    }
    remap[i] = found;
  }

  for (const auto& t : raw.triangles) {
    const std::array<uint32_t, 3> m = {remap[t[0]], remap[t[1]], remap[t[2]]};
    if (m[0] == m[1] || m[1] == m[2] || m[0] == m[2]) continue;
    const Vec3 a = out.vertices[m[0]];
    const Vec3 b = out.vertices[m[1]];
    const Vec3 c = out.vertices[m[2]];
    if (0.5 * (b - a).cross(c - a).norm() <= kDegenerateArea) continue;
    out.triangles.push_back(m);
  }
  return out;
}

TriMesh load_stl(std::span<const uint8_t> bytes) {
  if (bytes.empty()) throw ParseError("empty STL buffer", 0);
  TriMesh raw = looks_ascii(bytes) ? parse_ascii(bytes) : parse_binary(bytes);
  TriMesh mesh = weld_mesh(raw);
  if (mesh.vertex_count() < 3)
    throw ParseError("STL contains no usable geometry after cleanup", bytes.size());
  return mesh;
}

TriMesh load_stl_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidInput(fmt::format("cannot open STL file '{}'", path));
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                             std::istreambuf_iterator<char>());
  return load_stl(bytes);
}

std::vector<uint8_t> save_stl(const TriMesh& mesh) {
  std::vector<uint8_t> out(84 + 50 * mesh.triangle_count(), 0);
  std::memcpy(out.data(), "dynsim binary stl", 17);
  const uint32_t count = static_cast<uint32_t>(mesh.triangle_count());
  std::memcpy(out.data() + 80, &count, 4);
  size_t off = 84;
  for (size_t t = 0; t < mesh.triangle_count(); ++t, off += 50) {
    const Vec3 a = mesh.tri_vertex(t, 0);
    const Vec3 b = mesh.tri_vertex(t, 1);
    const Vec3 c = mesh.tri_vertex(t, 2);
    Vec3 n = (b - a).cross(c - a);
    const double len = n.norm();
    if (len > 0) n /= len;
    const Vec3 rows[4] = {n, a, b, c};
    for (int r = 0; r < 4; ++r)
      for (int k = 0; k < 3; ++k) {
        const float v = static_cast<float>(rows[r][k]);
        std::memcpy(out.data() + off + 12 * r + 4 * k, &v, 4);
      }
  }
  return out;
}

void save_stl_file(const TriMesh& mesh, const std::string& path) {
  const auto bytes = save_stl(mesh);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InvalidInput(fmt::format("cannot write STL file '{}'", path));
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace dynsim
