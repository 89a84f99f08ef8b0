#pragma once

#include <vector>

#include "dynsim/bvh.hpp"
#include "dynsim/mesh.hpp"
#include "dynsim/rng.hpp"

namespace dynsim {

using Vec6 = Eigen::Matrix<double, 6, 1>;

/// Joint order everywhere: x, y, z [m], roll, pitch, yaw [rad].
enum JointIndex { kX = 0, kY, kZ, kRoll, kPitch, kYaw };

struct JointLimits {
  Vec3 pos_min{-10, -10, 0};
  Vec3 pos_max{10, 10, 3};
  double rollpitch_max = 25.0 * std::numbers::pi / 180.0;  // 0 in horizontal mode
  double vmax_xyz = 0.5;                                   // m/s
  double vmax_rollpitch = 40.0 * std::numbers::pi / 180.0; // rad/s
  double vmax_yaw = 30.0 * std::numbers::pi / 180.0;       // rad/s

  bool horizontal() const { return rollpitch_max == 0.0; }
  double vmax(int joint) const {
    if (joint < 3) return vmax_xyz;
    if (joint == kYaw) return vmax_yaw;
    return vmax_rollpitch;
  }

  static JointLimits free_flight(const Vec3& lo, const Vec3& hi);
  static JointLimits horizontal_flight(const Vec3& lo, const Vec3& hi);
};

struct RobotState {
  Vec6 q = Vec6::Zero();     // positions; yaw kept in [0, 2*pi)
  Vec6 qdot = Vec6::Zero();  // applied joint velocities (post clamping)

  Pose pose() const {
    return Pose(q.head<3>(), quat_from_rpy(q[kRoll], q[kPitch], q[kYaw]));
  }
};

enum class SetpointMode : uint8_t { Position = 0, Velocity = 1 };

struct Setpoint {
  SetpointMode mode = SetpointMode::Position;
  Vec6 target = Vec6::Zero();
};

struct PidGains {
  Vec6 kp = Vec6::Constant(1.5);
  Vec6 ki = Vec6::Zero();
  Vec6 kd = Vec6::Constant(0.1);
  double integrator_clamp = 1.0;
};

/// Per-joint PID memory (integrator, previous error).
struct PidState {
  Vec6 integral = Vec6::Zero();
  Vec6 prev_error = Vec6::Zero();
  bool has_prev = false;
};

using JointCommand = Vec6;  // joint velocities

/// Wraps an angle to (-pi, pi].
double wrap_angle(double a);
/// Wraps an angle to [0, 2*pi).
double wrap_yaw(double a);

/// Position mode: per-joint PID on the error (yaw error wrapped), clamped
/// to the speed caps. Velocity mode: clamped passthrough. Horizontal mode
/// zeroes the roll/pitch commands. Throws InvalidInput on NaN.
JointCommand controller_step(const RobotState& state, const Setpoint& setpoint,
                             const PidGains& gains, PidState& pid,
                             const JointLimits& limits, double dt);

/// Kinematic update q += v*dt with position clamping and yaw wrap; qdot
/// reports the velocity actually applied (0 on a saturated bound).
RobotState integrate(const RobotState& state, const JointCommand& cmd,
                     const JointLimits& limits, double dt);

struct WaypointTolerance {
  double position = 0.15;  // m, Euclidean over x,y,z
  double angle = 0.15;     // rad, max abs over roll/pitch/yaw (wrapped)
};

/// Walks a fixed plan: the setpoint is the first goal not yet reached;
/// once every goal is done the last one is held.
class WaypointFollower {
 public:
  WaypointFollower() = default;
  WaypointFollower(std::vector<Vec6> plan, WaypointTolerance tol);

  Setpoint next(const RobotState& state);
  size_t cursor() const { return cursor_; }
  const std::vector<Vec6>& plan() const { return plan_; }

 private:
  std::vector<Vec6> plan_;
  WaypointTolerance tol_;
  size_t cursor_ = 0;

  bool reached(const RobotState& state, const Vec6& goal) const;
};

/// Plain-text waypoint plans: one "x y z roll pitch yaw" line per goal,
/// '#' comments. Angles in radians.
std::vector<Vec6> load_waypoints(const std::string& path);

struct InitPoseParams {
  double hover_height = 1.2;           // m
  int yaw_candidates = 36;
  int fov_rays_x = 9;
  int fov_rays_y = 7;
  double hfov = 86.0 * std::numbers::pi / 180.0;
  double vfov = 57.0 * std::numbers::pi / 180.0;
  double max_range = 3.5;              // m
};

/// Position uniform over the grid's free cells at hover height; yaw is
/// the candidate whose FOV ray fan hits geometry within max_range most
/// often (ties broken toward the lowest yaw). Throws when no cell is free.
Pose init_pose(const OccupancyGrid2D& grid, const CollisionObject& env, Rng& rng,
               const InitPoseParams& params = {});

}  // namespace dynsim
