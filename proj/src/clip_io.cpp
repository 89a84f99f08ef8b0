#include "dynsim/clip_io.hpp"

#include <fmt/format.h>

#include <cstring>
#include <fstream>

#include "dynsim/error.hpp"

namespace dynsim {

namespace {

constexpr char kMagic[4] = {'D', 'S', 'C', 'L'};
constexpr uint16_t kVersion = 1;

class Writer {
 public:
  std::vector<uint8_t> out;
  template <typename T>
  void put(T v) {
    const size_t at = out.size();
    out.resize(at + sizeof(T));
    std::memcpy(out.data() + at, &v, sizeof(T));
  }
  void put_vec3(const Vec3& v) {
    put(v.x());
    put(v.y());
    put(v.z());
  }
};

class Reader {
 public:
  Reader(std::span<const uint8_t> b) : bytes(b) {}
  std::span<const uint8_t> bytes;
  size_t pos = 0;
  template <typename T>
  T get() {
    if (pos + sizeof(T) > bytes.size())
      throw ParseError(fmt::format("clip container truncated at byte {}", pos), pos);
    T v;
    std::memcpy(&v, bytes.data() + pos, sizeof(T));
    pos += sizeof(T);
    return v;
  }
  Vec3 get_vec3() {
    const double x = get<double>();
    const double y = get<double>();
    const double z = get<double>();
    return Vec3(x, y, z);
  }
};

}  // namespace

std::vector<uint8_t> save_clip(const AnimatedAsset& asset) {
  Writer w;
  w.out.insert(w.out.end(), kMagic, kMagic + 4);
  w.put(kVersion);
  w.put(static_cast<uint8_t>(asset.clip.deforming() ? 0 : 1));
  w.put(static_cast<uint8_t>(asset.playback));
  w.put(static_cast<uint8_t>(asset.kind));
  w.put(static_cast<uint8_t>(0));
  w.put(asset.base.asset_id);
  w.put(asset.clip.frame_rate);
  w.put(static_cast<uint32_t>(asset.base.vertex_count()));
  w.put(static_cast<uint32_t>(asset.base.triangle_count()));
  w.put(static_cast<uint32_t>(asset.clip.frame_count()));
  for (const auto& t : asset.base.triangles) {
    w.put(t[0]);
    w.put(t[1]);
    w.put(t[2]);
  }
  for (const auto& v : asset.base.vertices) w.put_vec3(v);
  if (asset.clip.deforming()) {
    for (const auto& frame : asset.clip.vertex_frames)
      for (const auto& v : frame) w.put_vec3(v);
  } else {
    for (const auto& p : asset.clip.pose_frames) {
      w.put_vec3(p.position);
      w.put(p.orientation.x());
      w.put(p.orientation.y());
      w.put(p.orientation.z());
      w.put(p.orientation.w());
    }
  }
  return w.out;
}

AnimatedAsset load_clip(std::span<const uint8_t> bytes) {
  Reader r(bytes);
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw ParseError("not a clip container (bad magic)", 0);
  r.pos = 4;
  const uint16_t version = r.get<uint16_t>();
  if (version != kVersion)
    throw ParseError(fmt::format("unsupported clip version {}", version), 4);
  const uint8_t clip_type = r.get<uint8_t>();
  AnimatedAsset asset;
  asset.playback = static_cast<Playback>(r.get<uint8_t>());
  asset.kind = static_cast<AssetKind>(r.get<uint8_t>());
  r.get<uint8_t>();  // pad
  asset.base.asset_id = r.get<uint32_t>();
  asset.clip.frame_rate = r.get<double>();
  const uint32_t nverts = r.get<uint32_t>();
  const uint32_t ntris = r.get<uint32_t>();
  const uint32_t nframes = r.get<uint32_t>();
  if (asset.clip.frame_rate <= 0)
    throw ParseError("clip frame_rate must be positive", r.pos);
  if (nframes == 0) throw ParseError("clip needs at least one frame", r.pos);
  asset.base.triangles.reserve(ntris);
  for (uint32_t t = 0; t < ntris; ++t) {
    const uint32_t a = r.get<uint32_t>();
    const uint32_t b = r.get<uint32_t>();
    const uint32_t c = r.get<uint32_t>();
    if (a >= nverts || b >= nverts || c >= nverts)
      throw ParseError(fmt::format("triangle {} references out-of-range vertex", t), r.pos);
    asset.base.triangles.push_back({a, b, c});
  }
  asset.base.vertices.reserve(nverts);
  for (uint32_t v = 0; v < nverts; ++v) asset.base.vertices.push_back(r.get_vec3());
  if (clip_type == 0) {
    asset.clip.vertex_frames.resize(nframes);
    for (auto& frame : asset.clip.vertex_frames) {
      frame.reserve(nverts);
      for (uint32_t v = 0; v < nverts; ++v) frame.push_back(r.get_vec3());
    }
  } else {
    asset.clip.pose_frames.reserve(nframes);
    for (uint32_t f = 0; f < nframes; ++f) {
      // Fields restored verbatim: renormalizing here would perturb bits.
      Pose p;
      p.position = r.get_vec3();
      p.orientation.x() = r.get<double>();
      p.orientation.y() = r.get<double>();
      p.orientation.z() = r.get<double>();
      p.orientation.w() = r.get<double>();
      asset.clip.pose_frames.push_back(p);
    }
  }
  return asset;
}

void save_clip_file(const AnimatedAsset& asset, const std::string& path) {
  const auto bytes = save_clip(asset);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InvalidInput(fmt::format("cannot write clip file '{}'", path));
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

AnimatedAsset load_clip_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidInput(fmt::format("cannot open clip file '{}'", path));
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                             std::istreambuf_iterator<char>());
  return load_clip(bytes);
}

}  // namespace dynsim
