#include "dynsim/procedural.hpp"

#include <cmath>
#include <numbers>

#include "dynsim/error.hpp"
#include "dynsim/primitives.hpp"

namespace dynsim {

AnimatedAsset gen_walker(Rng& rng, const WalkerParams& p) {
  if (p.speed <= 0 || p.path_length <= 0 || p.height <= 0 || p.frame_rate <= 0)
    throw InvalidInput("gen_walker: params must be positive");

  const double pi = std::numbers::pi;
  AnimatedAsset asset;
  asset.kind = AssetKind::Human;
  asset.playback = Playback::PingPong;
  asset.base = make_capsule(p.height / 7.0, p.height, 10, 4);

  const bool arc = p.path == WalkPath::Arc ||
                   (p.path == WalkPath::Random && rng.uniform() < 0.5);
  // Arc radius; the path length is measured along the arc.
  const double radius = arc ? rng.uniform(2.0, 6.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0) : 0.0;
  const double gait_hz = rng.uniform(1.7, 2.1);
  const double sway_phase = rng.uniform(0.0, 2 * pi);
  const double bob_amp = 0.02 * p.height;
  const double sway_amp = 0.015 * p.height;
  const double squash_amp = 0.03;

  const double duration = p.path_length / p.speed;
  const size_t frames = static_cast<size_t>(std::round(duration * p.frame_rate)) + 1;

  asset.clip.frame_rate = p.frame_rate;
  asset.clip.vertex_frames.reserve(frames);
  for (size_t f = 0; f < frames; ++f) {
    const double t = static_cast<double>(f) / p.frame_rate;
    const double s = std::min(t * p.speed, p.path_length);
    Vec3 pos;
    double yaw;
    if (arc) {
      const double ang = s / radius;
      pos = Vec3(radius * std::sin(ang), radius * (1.0 - std::cos(ang)), 0.0);
      yaw = ang;
    } else {
      pos = Vec3(s, 0.0, 0.0);
      yaw = 0.0;
    }
    const double phase = 2 * pi * gait_hz * t;
    const double bob = bob_amp * 0.5 * (1.0 - std::cos(phase));
    const double sway = sway_amp * std::sin(0.5 * phase + sway_phase);
    const double squash = 1.0 + squash_amp * std::sin(phase);
    const double cy = std::cos(yaw), sy = std::sin(yaw);

    std::vector<Vec3> verts(asset.base.vertices.size());
    for (size_t v = 0; v < verts.size(); ++v) {
      Vec3 q = asset.base.vertices[v];
      q.z() *= squash;
      q.y() += sway * (q.z() / p.height);  // lean, pivoting at the feet
      verts[v] = Vec3(pos.x() + cy * q.x() - sy * q.y(),
                      pos.y() + sy * q.x() + cy * q.y(), q.z() + bob);
    }
    asset.clip.vertex_frames.push_back(std::move(verts));
  }
  return asset;
}

AnimatedAsset gen_flyer(Rng& rng, const FlyerParams& p) {
  if (p.bounds.isEmpty()) throw InvalidInput("gen_flyer: empty bounds");
  if (p.speed_min <= 0 || p.speed_max < p.speed_min)
    throw InvalidInput("gen_flyer: bad speed range");

  AnimatedAsset asset;
  asset.kind = AssetKind::Flyer;
  asset.playback = Playback::Loop;
  const bool box = p.shape == FlyerShape::Box ||
                   (p.shape == FlyerShape::RandomShape && rng.uniform() < 0.5);
  if (box) {
    asset.base = make_box(Vec3(0, 0, 0), Vec3(rng.uniform(0.15, 0.5), rng.uniform(0.15, 0.5),
                                              rng.uniform(0.15, 0.5)));
  } else {
    asset.base = make_ellipsoid(
        Vec3(0, 0, 0),
        Vec3(rng.uniform(0.1, 0.3), rng.uniform(0.1, 0.3), rng.uniform(0.1, 0.3)), 10, 6);
  }

  auto rand_point = [&] {
    return Vec3(rng.uniform(p.bounds.min().x(), p.bounds.max().x()),
                rng.uniform(p.bounds.min().y(), p.bounds.max().y()),
                rng.uniform(p.bounds.min().z(), p.bounds.max().z()));
  };
  auto rand_quat = [&] {
    return quat_from_rpy(rng.uniform(0, 2 * std::numbers::pi),
                         rng.uniform(0, 2 * std::numbers::pi),
                         rng.uniform(0, 2 * std::numbers::pi));
  };

  // Waypoint segments with cosine easing: position
  //   p(tau) = a + (b-a) * (1 - cos(pi*tau)) / 2
  // peaks at |p'| = dist*pi/(2*seg_dur); choosing seg_dur = dist*pi/(2*v)
  // makes that peak exactly the sampled segment speed v.
  struct Segment {
    Vec3 from, to;
    Quat q_from, q_to;
    double t0, t1;
  };
  std::vector<Segment> segments;
  Vec3 here = rand_point();
  Quat q_here = rand_quat();
  double t = 0.0;
  while (t < p.duration) {
    Vec3 next = rand_point();
    int guard = 0;
    while ((next - here).norm() < 0.3 && ++guard < 16) next = rand_point();
    const double v = rng.uniform(p.speed_min, p.speed_max);
    const double dist = (next - here).norm();
    const double dur = std::max(dist * std::numbers::pi / (2.0 * v), 0.05);
    const Quat q_next = rand_quat();
    segments.push_back({here, next, q_here, q_next, t, t + dur});
    here = next;
    q_here = q_next;
    t += dur;
  }

  const size_t frames = static_cast<size_t>(std::ceil(p.duration * p.frame_rate)) + 1;
  asset.clip.frame_rate = p.frame_rate;
  asset.clip.pose_frames.reserve(frames);
  size_t seg = 0;
  for (size_t f = 0; f < frames; ++f) {
    const double ft = static_cast<double>(f) / p.frame_rate;
    while (seg + 1 < segments.size() && ft > segments[seg].t1) ++seg;
    const Segment& s = segments[seg];
    const double tau = std::clamp((ft - s.t0) / (s.t1 - s.t0), 0.0, 1.0);
    const double ease = 0.5 * (1.0 - std::cos(std::numbers::pi * tau));
    asset.clip.pose_frames.emplace_back(s.from + ease * (s.to - s.from),
                                        s.q_from.slerp(ease, s.q_to));
  }
  return asset;
}

}  // namespace dynsim
