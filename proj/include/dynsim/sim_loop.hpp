#pragma once

#include <string>
#include <vector>

#include "dynsim/log.hpp"
#include "dynsim/robot.hpp"
#include "dynsim/scene.hpp"
#include "dynsim/sim_config.hpp"

namespace dynsim {

struct RobotSetup {
  JointLimits limits;
  PidGains gains;
  std::vector<Vec6> waypoints;
  WaypointTolerance waypoint_tol;
  Vec6 initial_q = Vec6::Zero();
};

/// Joint positions per physics step, total_steps()+1 entries (the extra
/// trailing pose feeds the IMU central difference of the last step).
using JointTrajectory = std::vector<Vec6>;

/// Phase A: closed-loop controller rollout. Deterministic; this is the
/// only place the controller runs.
JointTrajectory rollout_robot(const SimConfig& config, const RobotSetup& setup);

struct EmitOptions {
  std::vector<CameraConfig> extra_cameras;  // extra channels "<name>.rgb/.depth" (robot 0)
  std::string bundle_dir;                   // high-res ground-truth dumps; empty = off
};

/// Phase B: pose-driven channel emission. Every payload derives from the
/// trajectories, the scene and the config alone, so replaying the stored
/// trajectory reproduces the log byte for byte.
Log emit_log(const SimConfig& config, const Scene& scene,
             const std::vector<JointTrajectory>& trajectories,
             const EmitOptions& options = {});

struct RunResult {
  Log log;
  std::vector<JointTrajectory> trajectories;
};

/// rollout_robot for every robot, then emit_log.
RunResult run_experiment(const SimConfig& config, const Scene& scene,
                         const std::vector<RobotSetup>& robots,
                         const EmitOptions& options = {});

/// Channel name prefix for robot r ("" for robot 0, "r<r>/" otherwise).
std::string robot_prefix(size_t robot_index);

}  // namespace dynsim
