#include "dynsim/robot.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "dynsim/error.hpp"

namespace dynsim {

double wrap_angle(double a) {
  a = std::fmod(a + std::numbers::pi, 2.0 * std::numbers::pi);
  if (a <= 0.0) a += 2.0 * std::numbers::pi;
  return a - std::numbers::pi;
}

double wrap_yaw(double a) {
  a = std::fmod(a, 2.0 * std::numbers::pi);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

JointLimits JointLimits::free_flight(const Vec3& lo, const Vec3& hi) {
  JointLimits l;
  l.pos_min = lo;
  l.pos_max = hi;
  return l;
}

JointLimits JointLimits::horizontal_flight(const Vec3& lo, const Vec3& hi) {
  JointLimits l = free_flight(lo, hi);
  l.rollpitch_max = 0.0;
  return l;
}

JointCommand controller_step(const RobotState& state, const Setpoint& setpoint,
                             const PidGains& gains, PidState& pid,
                             const JointLimits& limits, double dt) {
  if (dt <= 0) throw InvalidInput("controller_step: dt must be > 0");
  if (!state.q.allFinite() || !setpoint.target.allFinite())
    throw InvalidInput("controller_step: NaN/inf in state or setpoint");

  JointCommand cmd = JointCommand::Zero();
  if (setpoint.mode == SetpointMode::Velocity) {
    cmd = setpoint.target;
  } else {
    for (int j = 0; j < 6; ++j) {
      double err = setpoint.target[j] - state.q[j];
      if (j == kYaw) err = wrap_angle(err);
      pid.integral[j] = std::clamp(pid.integral[j] + err * dt, -gains.integrator_clamp,
                                   gains.integrator_clamp);
      const double deriv = pid.has_prev ? (err - pid.prev_error[j]) / dt : 0.0;
      cmd[j] = gains.kp[j] * err + gains.ki[j] * pid.integral[j] + gains.kd[j] * deriv;
      pid.prev_error[j] = err;
    }
    pid.has_prev = true;
  }

  for (int j = 0; j < 6; ++j) {
    const double vmax = limits.vmax(j);
    cmd[j] = std::clamp(cmd[j], -vmax, vmax);
  }
  if (limits.horizontal()) {
    cmd[kRoll] = 0.0;
    cmd[kPitch] = 0.0;
  }
  return cmd;
}

RobotState integrate(const RobotState& state, const JointCommand& cmd,
                     const JointLimits& limits, double dt) {
  if (dt <= 0) throw InvalidInput("integrate: dt must be > 0");
  RobotState out;
  for (int j = 0; j < 6; ++j) {
    const double target = state.q[j] + cmd[j] * dt;
    double clamped = target;
    if (j < 3) {
      clamped = std::clamp(target, limits.pos_min[j], limits.pos_max[j]);
    } else if (j == kRoll || j == kPitch) {
      clamped = std::clamp(target, -limits.rollpitch_max, limits.rollpitch_max);
    } else {
      clamped = wrap_yaw(target);
    }
    out.q[j] = clamped;
    if (j == kYaw || clamped == target) {
      out.qdot[j] = cmd[j];  // wrap does not limit motion
    } else {
      // saturated: report what was actually applied, never above the cap
      const double applied = (clamped - state.q[j]) / dt;
      out.qdot[j] = std::clamp(applied, -std::abs(cmd[j]), std::abs(cmd[j]));
    }
  }
  return out;
}

WaypointFollower::WaypointFollower(std::vector<Vec6> plan, WaypointTolerance tol)
    : plan_(std::move(plan)), tol_(tol) {
  if (plan_.empty()) throw InvalidInput("WaypointFollower: empty plan");
}

bool WaypointFollower::reached(const RobotState& state, const Vec6& goal) const {
  const double pos_err = (goal.head<3>() - state.q.head<3>()).norm();
  if (pos_err >= tol_.position) return false;
  for (int j = kRoll; j <= kYaw; ++j)
    if (std::abs(wrap_angle(goal[j] - state.q[j])) >= tol_.angle) return false;
  return true;
}

Setpoint WaypointFollower::next(const RobotState& state) {
  while (cursor_ + 1 < plan_.size() && reached(state, plan_[cursor_])) ++cursor_;
  Setpoint sp;
  sp.mode = SetpointMode::Position;
  sp.target = plan_[cursor_];
  return sp;
}

std::vector<Vec6> load_waypoints(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidInput(fmt::format("cannot open waypoint file '{}'", path));
  std::vector<Vec6> plan;
  std::string line;
  size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream is(line);
    Vec6 g;
    if (!(is >> g[0])) continue;  // blank line
    for (int j = 1; j < 6; ++j)
      if (!(is >> g[j]))
        throw ParseError(fmt::format("waypoint file '{}' line {}: expected 6 numbers",
                                     path, lineno),
                         lineno);
    plan.push_back(g);
  }
  if (plan.empty()) throw InvalidInput(fmt::format("waypoint file '{}' holds no goals", path));
  return plan;
}

Pose init_pose(const OccupancyGrid2D& grid, const CollisionObject& env, Rng& rng,
               const InitPoseParams& p) {
  std::vector<std::pair<int, int>> free_cells;
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      if (grid.at(i, j) == Cell::Free) free_cells.emplace_back(i, j);
  if (free_cells.empty()) throw InvalidInput("init_pose: occupancy grid has no free cell");

  const auto [ci, cj] = free_cells[rng.uniform_int(static_cast<uint64_t>(free_cells.size()))];
  const Vec2 center = grid.cell_center(ci, cj);
  const Vec3 position(center.x(), center.y(), p.hover_height);

  int best_hits = -1;
  double best_yaw = 0.0;
  for (int k = 0; k < p.yaw_candidates; ++k) {
    const double yaw = 2.0 * std::numbers::pi * k / p.yaw_candidates;
    int hits = 0;
    for (int iy = 0; iy < p.fov_rays_y; ++iy) {
      const double el = p.vfov * (iy / (p.fov_rays_y - 1.0) - 0.5);
      for (int ix = 0; ix < p.fov_rays_x; ++ix) {
        const double az = yaw + p.hfov * (ix / (p.fov_rays_x - 1.0) - 0.5);
        const Vec3 dir(std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el));
        const auto hit = env.bvh.raycast(env.mesh, position, dir);
        if (hit && hit->t <= p.max_range) ++hits;
      }
    }
    if (hits > best_hits) {  // strict: ties keep the lowest yaw
      best_hits = hits;
      best_yaw = yaw;
    }
  }
  return Pose(position, quat_from_rpy(0, 0, best_yaw));
}

}  // namespace dynsim
