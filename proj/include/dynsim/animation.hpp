#pragma once

#include <variant>
#include <vector>

#include "dynsim/mesh.hpp"

namespace dynsim {

enum class Playback : uint8_t { PingPong = 0, Loop = 1 };
enum class AssetKind : uint8_t { Human = 0, Flyer = 1 };

/// Either per-frame vertex arrays over a fixed topology, or a rigid pose
/// track applied to the base mesh.
struct AnimationClip {
  double frame_rate = 30.0;  // Hz
  std::vector<std::vector<Vec3>> vertex_frames;  // deforming clips
  std::vector<Pose> pose_frames;                 // rigid clips

  bool deforming() const { return !vertex_frames.empty(); }
  size_t frame_count() const {
    return deforming() ? vertex_frames.size() : pose_frames.size();
  }
  /// Time span between the first and last frame.
  double duration() const {
    return frame_count() <= 1 ? 0.0 : (frame_count() - 1) / frame_rate;
  }
};

struct AnimatedAsset {
  TriMesh base;
  AnimationClip clip;
  AssetKind kind = AssetKind::Human;
  Playback playback = Playback::PingPong;
};

/// Static aggregate of an animation's geometry over time, used for
/// placement collision checks. Plain triangle concatenation, no union.
struct SweptTrace {
  TriMesh mesh;
  uint32_t stride = 4;
};

/// Geometry at time t (asset-local frame). PingPong maps t through a
/// triangle wave over the clip duration, Loop wraps it; frames are
/// linearly interpolated (slerp for rigid orientation).
TriMesh sample_frame(const AnimatedAsset& asset, double t);

/// Pose-track variant of sample_frame for rigid clips (avoids building
/// the transformed mesh when only the pose is needed).
Pose sample_pose(const AnimatedAsset& asset, double t);

/// Concatenates every stride-th frame (frame 0 and the last frame always
/// included).
SweptTrace swept_trace(const AnimatedAsset& asset, uint32_t stride = 4);

/// Largest vertex displacement between consecutive frames; bounds the
/// interpolation slack of the trace.
double max_frame_displacement(const AnimatedAsset& asset);

}  // namespace dynsim
