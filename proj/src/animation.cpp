#include "dynsim/animation.hpp"

#include <cmath>

#include "dynsim/error.hpp"

namespace dynsim {

namespace {

/// Maps t to clip-local time according to the playback mode.
double playback_time(const AnimatedAsset& asset, double t) {
  const double d = asset.clip.duration();
  if (d <= 0.0) return 0.0;
  if (asset.playback == Playback::Loop) return std::fmod(t, d);
  // triangle wave with period 2d
  const double u = std::fmod(t, 2.0 * d);
  return u <= d ? u : 2.0 * d - u;
}

struct FrameBlend {
  size_t i0, i1;
  double alpha;
};

FrameBlend bracket(const AnimationClip& clip, double local_t) {
  const size_t n = clip.frame_count();
  if (n <= 1) return {0, 0, 0.0};
  const double f = local_t * clip.frame_rate;
  size_t i0 = static_cast<size_t>(std::floor(f));
  if (i0 >= n - 1) return {n - 1, n - 1, 0.0};
  return {i0, i0 + 1, f - static_cast<double>(i0)};
}

}  // namespace

Pose sample_pose(const AnimatedAsset& asset, double t) {
  if (asset.clip.deforming())
    throw InvalidInput("sample_pose: clip is deforming, not a pose track");
  if (asset.clip.pose_frames.empty()) return Pose::identity();
  const FrameBlend fb = bracket(asset.clip, playback_time(asset, t));
  const Pose& a = asset.clip.pose_frames[fb.i0];
  const Pose& b = asset.clip.pose_frames[fb.i1];
  return Pose(a.position + fb.alpha * (b.position - a.position),
              a.orientation.slerp(fb.alpha, b.orientation));
}

TriMesh sample_frame(const AnimatedAsset& asset, double t) {
  if (t < 0) throw InvalidInput("sample_frame: t must be >= 0");
  if (!asset.clip.deforming()) {
    if (asset.clip.pose_frames.empty()) return asset.base;
    return asset.base.transformed(sample_pose(asset, t));
  }
  const FrameBlend fb = bracket(asset.clip, playback_time(asset, t));
  const auto& f0 = asset.clip.vertex_frames[fb.i0];
  const auto& f1 = asset.clip.vertex_frames[fb.i1];
  TriMesh out;
  out.asset_id = asset.base.asset_id;
  out.triangles = asset.base.triangles;
  out.vertices.resize(f0.size());
  if (fb.alpha == 0.0) {
    out.vertices = f0;
  } else {
    for (size_t i = 0; i < f0.size(); ++i)
      out.vertices[i] = f0[i] + fb.alpha * (f1[i] - f0[i]);
  }
  return out;
}

SweptTrace swept_trace(const AnimatedAsset& asset, uint32_t stride) {
  if (stride < 1) throw InvalidInput("swept_trace: stride must be >= 1");
  SweptTrace trace;
  trace.stride = stride;
  trace.mesh.asset_id = asset.base.asset_id;
  const size_t n = std::max<size_t>(asset.clip.frame_count(), 1);
  const double fps = asset.clip.frame_rate;
  size_t last_added = SIZE_MAX;
  for (size_t f = 0; f < n; f += stride) {
    trace.mesh.append(sample_frame(asset, f / fps));
    last_added = f;
  }
  if (last_added != n - 1) trace.mesh.append(sample_frame(asset, (n - 1) / fps));
  return trace;
}

double max_frame_displacement(const AnimatedAsset& asset) {
  double best = 0.0;
  const auto& clip = asset.clip;
  if (clip.deforming()) {
    for (size_t f = 0; f + 1 < clip.vertex_frames.size(); ++f)
      for (size_t v = 0; v < clip.vertex_frames[f].size(); ++v)
        best = std::max(best,
                        (clip.vertex_frames[f + 1][v] - clip.vertex_frames[f][v]).norm());
  } else if (!clip.pose_frames.empty()) {
    // rigid: displacement bounded by translation plus rotation sweep of
    // the base-mesh radius
    double radius = 0.0;
    for (const auto& v : asset.base.vertices) radius = std::max(radius, v.norm());
    for (size_t f = 0; f + 1 < clip.pose_frames.size(); ++f) {
      const Pose& a = clip.pose_frames[f];
      const Pose& b = clip.pose_frames[f + 1];
      const double dp = (b.position - a.position).norm();
      const double ang = a.orientation.angularDistance(b.orientation);
      best = std::max(best, dp + ang * radius);
    }
  }
  return best;
}

}  // namespace dynsim
