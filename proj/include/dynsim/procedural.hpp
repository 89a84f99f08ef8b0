#pragma once

#include "dynsim/animation.hpp"
#include "dynsim/rng.hpp"

namespace dynsim {

enum class WalkPath : uint8_t { Straight = 0, Arc = 1, Random = 2 };

struct WalkerParams {
  double speed = 1.0;        // m/s along the path
  double path_length = 4.0;  // m
  double height = 1.75;      // m
  WalkPath path = WalkPath::Random;
  double frame_rate = 30.0;
};

/// Capsule-bodied walking figure with a gait bob, lateral sway and a
/// breathing squash (per-frame vertex deformation). Walks a straight or
/// arc path starting at the origin facing +x. Deterministic in `rng`.
AnimatedAsset gen_walker(Rng& rng, const WalkerParams& params);

enum class FlyerShape : uint8_t { RandomShape = 0, Box = 1, Ellipsoid = 2 };

struct FlyerParams {
  Eigen::AlignedBox3d bounds;
  double speed_min = 0.3;    // m/s
  double speed_max = 1.5;
  double duration = 62.0;    // s of track to generate
  double frame_rate = 30.0;
  FlyerShape shape = FlyerShape::RandomShape;
};

/// Rigid box or ellipsoid drifting on a waypoint track inside `bounds`.
/// Per-segment cosine easing keeps the speed at or below the sampled
/// segment speed; no collision constraints by design.
AnimatedAsset gen_flyer(Rng& rng, const FlyerParams& params);

}  // namespace dynsim
