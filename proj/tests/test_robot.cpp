#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynsim/error.hpp"
#include "dynsim/footprint.hpp"
#include "dynsim/primitives.hpp"
#include "dynsim/robot.hpp"
#include "oracles.hpp"

using namespace dynsim;

namespace {
constexpr double kDt = 1.0 / 240.0;
const double kDeg = std::numbers::pi / 180.0;
}  // namespace

TEST_CASE("controller_step: zero error gives zero command") {
  RobotState state;
  state.q << 1, 2, 1.5, 0.1, -0.1, 3.0;
  Setpoint sp;
  sp.target = state.q;
  PidGains gains;
  PidState pid;
  const JointLimits limits = JointLimits::free_flight(Vec3(-10, -10, 0), Vec3(10, 10, 3));
  const JointCommand cmd = controller_step(state, sp, gains, pid, limits, kDt);
  CHECK(cmd.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("controller_step: large x error saturates at 0.5 m/s") {
  RobotState state;
  Setpoint sp;
  sp.target << 10, 0, 0, 0, 0, 0;
  PidGains gains;
  gains.kp = Vec6::Constant(1.0);
  gains.kd = Vec6::Zero();
  PidState pid;
  const JointLimits limits = JointLimits::free_flight(Vec3(-20, -20, 0), Vec3(20, 20, 3));
  const JointCommand cmd = controller_step(state, sp, gains, pid, limits, kDt);
  CHECK(cmd[kX] == 0.5);
}

TEST_CASE("controller_step: horizontal mode zeroes roll and pitch exactly") {
  RobotState state;
  Setpoint sp;
  sp.target << 0, 0, 0, 0.4, -0.4, 1.0;
  PidGains gains;
  PidState pid;
  const JointLimits limits = JointLimits::horizontal_flight(Vec3(-10, -10, 0), Vec3(10, 10, 3));
  const JointCommand cmd = controller_step(state, sp, gains, pid, limits, kDt);
  CHECK(cmd[kRoll] == 0.0);
  CHECK(cmd[kPitch] == 0.0);
  CHECK(cmd[kYaw] != 0.0);
}

TEST_CASE("controller_step: NaN input rejected") {
  RobotState state;
  state.q[0] = std::numeric_limits<double>::quiet_NaN();
  Setpoint sp;
  PidGains gains;
  PidState pid;
  const JointLimits limits;
  CHECK_THROWS_AS(controller_step(state, sp, gains, pid, limits, kDt), InvalidInput);
}

TEST_CASE("controller_step: yaw targets 2*pi apart give identical commands") {
  Rng rng(5);
  const JointLimits limits = JointLimits::free_flight(Vec3(-10, -10, 0), Vec3(10, 10, 3));
  for (int i = 0; i < 200; ++i) {
    RobotState state;
    state.q[kYaw] = rng.uniform(0, 2 * std::numbers::pi);
    Setpoint a, b;
    a.target[kYaw] = rng.uniform(-6.0, 6.0);
    b = a;
    b.target[kYaw] += 2 * std::numbers::pi;
    PidGains gains;
    PidState pa, pb;
    const JointCommand ca = controller_step(state, a, gains, pa, limits, kDt);
    const JointCommand cb = controller_step(state, b, gains, pb, limits, kDt);
    // theta + 2*pi is itself rounded before the controller sees it, so
    // the match is at representation precision, not bitwise.
    CHECK(ca[kYaw] == doctest::Approx(cb[kYaw]).epsilon(1e-12));
  }
}

TEST_CASE("controller fuzz: commands never exceed the speed caps") {
  Rng rng(99);
  const JointLimits free = JointLimits::free_flight(Vec3(-10, -10, 0), Vec3(10, 10, 3));
  const JointLimits horiz = JointLimits::horizontal_flight(Vec3(-10, -10, 0), Vec3(10, 10, 3));
  PidState pid_free, pid_horiz;
  for (int i = 0; i < 10000; ++i) {
    RobotState state;
    for (int j = 0; j < 6; ++j) state.q[j] = rng.uniform(-8, 8);
    Setpoint sp;
    sp.mode = rng.uniform() < 0.5 ? SetpointMode::Position : SetpointMode::Velocity;
    for (int j = 0; j < 6; ++j) sp.target[j] = rng.uniform(-20, 20);
    PidGains gains;
    gains.kp = Vec6::Constant(rng.uniform(0, 5));
    gains.ki = Vec6::Constant(rng.uniform(0, 1));
    gains.kd = Vec6::Constant(rng.uniform(0, 1));
    const JointLimits& limits = rng.uniform() < 0.5 ? free : horiz;
    PidState& pid = limits.horizontal() ? pid_horiz : pid_free;
    const JointCommand cmd = controller_step(state, sp, gains, pid, limits,
                                             rng.uniform(1e-4, 0.1));
    CHECK(std::abs(cmd[kX]) <= 0.5);
    CHECK(std::abs(cmd[kY]) <= 0.5);
    CHECK(std::abs(cmd[kZ]) <= 0.5);
    CHECK(std::abs(cmd[kRoll]) <= 40 * kDeg);
    CHECK(std::abs(cmd[kPitch]) <= 40 * kDeg);
    CHECK(std::abs(cmd[kYaw]) <= 30 * kDeg);
    if (limits.horizontal()) {
      CHECK(cmd[kRoll] == 0.0);
      CHECK(cmd[kPitch] == 0.0);
    }
  }
}

TEST_CASE("integrate: zero command leaves the state unchanged") {
  RobotState state;
  state.q << 1, 2, 1.5, 0.1, -0.1, 3.0;
  const JointLimits limits = JointLimits::free_flight(Vec3(-10, -10, 0), Vec3(10, 10, 3));
  const RobotState next = integrate(state, JointCommand::Zero(), limits, kDt);
  CHECK(next.q == state.q);
  CHECK(next.qdot.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("integrate: yaw wraps at 360 degrees") {
  RobotState state;
  state.q[kYaw] = 359.0 * kDeg;
  JointCommand cmd = JointCommand::Zero();
  cmd[kYaw] = 30.0 * kDeg;
  const JointLimits limits;
  const RobotState next = integrate(state, cmd, limits, 0.1);
  CHECK(next.q[kYaw] == doctest::Approx(2.0 * kDeg).epsilon(1e-9));
  CHECK(next.qdot[kYaw] == cmd[kYaw]);
}

TEST_CASE("integrate: saturated bound reports zero applied velocity") {
  RobotState state;
  state.q[kX] = 10.0;
  JointCommand cmd = JointCommand::Zero();
  cmd[kX] = 0.5;
  const JointLimits limits = JointLimits::free_flight(Vec3(-10, -10, 0), Vec3(10, 10, 3));
  const RobotState next = integrate(state, cmd, limits, kDt);
  CHECK(next.q[kX] == 10.0);
  CHECK(next.qdot[kX] == 0.0);
}

TEST_CASE("integrate: positions stay inside limits under random commands") {
  Rng rng(1234);
  const JointLimits limits = JointLimits::free_flight(Vec3(-2, -2, 0), Vec3(2, 2, 2));
  RobotState state;
  state.q << 0, 0, 1, 0, 0, 0;
  for (int i = 0; i < 20000; ++i) {
    JointCommand cmd;
    for (int j = 0; j < 6; ++j) cmd[j] = rng.uniform(-1, 1);
    state = integrate(state, cmd, limits, kDt);
    for (int j = 0; j < 3; ++j) {
      CHECK(state.q[j] >= limits.pos_min[j]);
      CHECK(state.q[j] <= limits.pos_max[j]);
    }
    CHECK(std::abs(state.q[kRoll]) <= limits.rollpitch_max);
    CHECK(std::abs(state.q[kPitch]) <= limits.rollpitch_max);
    CHECK(state.q[kYaw] >= 0.0);
    CHECK(state.q[kYaw] < 2 * std::numbers::pi);
  }
}

TEST_CASE("waypoints: cursor advances past reached goals and holds the last") {
  std::vector<Vec6> plan(3, Vec6::Zero());
  plan[1] << 1, 0, 1, 0, 0, 0;
  plan[2] << 2, 0, 1, 0, 0, 0;
  WaypointFollower follower(plan, {});
  RobotState state;  // at goal 0 already
  Setpoint sp = follower.next(state);
  CHECK(sp.target == plan[1]);

  state.q = plan[1];
  sp = follower.next(state);
  CHECK(sp.target == plan[2]);

  state.q = plan[2];
  sp = follower.next(state);
  CHECK(sp.target == plan[2]);  // hold last
  sp = follower.next(state);
  CHECK(sp.target == plan[2]);
}

TEST_CASE("waypoints: closed-loop square reached within the speed-limit bound") {
  std::vector<Vec6> plan;
  const double corners[4][2] = {{6, 1}, {6, 6}, {1, 6}, {1, 1}};
  for (const auto& c : corners) {
    Vec6 g;
    g << c[0], c[1], 1.0, 0, 0, 0;
    plan.push_back(g);
  }
  WaypointFollower follower(plan, {});
  const JointLimits limits = JointLimits::free_flight(Vec3(0, 0, 0), Vec3(8, 8, 3));
  PidGains gains;
  PidState pid;
  RobotState state;
  state.q << 1, 1, 1, 0, 0, 0;
  // path length 5+5+5+5 m at 0.5 m/s = 40 s plus settle margin
  const double T = 20.0 / 0.5 + 8.0;
  const int steps = static_cast<int>(T / kDt);
  bool done = false;
  for (int k = 0; k < steps && !done; ++k) {
    const Setpoint sp = follower.next(state);
    const JointCommand cmd = controller_step(state, sp, gains, pid, limits, kDt);
    state = integrate(state, cmd, limits, kDt);
    done = follower.cursor() == plan.size() - 1 &&
           (state.q.head<3>() - plan.back().head<3>()).norm() < 0.05;
  }
  CHECK(done);
}

TEST_CASE("init_pose: closed box room ties every yaw, lowest wins") {
  RoomParams rp;
  rp.inner_size = Vec2(4, 4);
  rp.furniture = 0;
  Rng mesh_rng(1);
  const CollisionObject env(make_room(rp, mesh_rng));
  const OccupancyGrid2D grid = rasterize_occupancy(env.mesh, 0.4, 2.0, 0.25);
  Rng rng(5);
  InitPoseParams p;
  p.max_range = 50.0;  // everything hits in a closed 4x4 room
  const Pose pose = init_pose(grid, env, rng, p);
  const Vec3 fwd = pose.orientation * Vec3::UnitX();
  CHECK(fwd.x() == doctest::Approx(1.0));  // yaw == 0 by tie-break
  CHECK(pose.position.z() == doctest::Approx(p.hover_height));
}

TEST_CASE("init_pose: faces away from an open wall") {
  RoomParams rp;
  rp.inner_size = Vec2(5, 5);
  rp.furniture = 0;
  rp.opening_width = 3.5;  // big opening in the +x wall
  Rng mesh_rng(1);
  const CollisionObject env(make_room(rp, mesh_rng));

  // force the robot to the room center so the geometry story is clear
  OccupancyGrid2D grid;
  grid.resolution = 0.5;
  grid.origin = Vec2(2.25, 2.25);
  grid.nx = grid.ny = 1;
  grid.cells = {Cell::Free};

  Rng rng(5);
  InitPoseParams p;
  const Pose pose = init_pose(grid, env, rng, p);
  const Vec3 fwd = pose.orientation * Vec3::UnitX();
  CHECK(fwd.x() < 0.0);  // looks into the -x half, away from the opening

  // per-yaw census oracle via linear raycasts
  int best_hits = -1;
  double best_yaw = -1;
  for (int k = 0; k < p.yaw_candidates; ++k) {
    const double yaw = 2 * std::numbers::pi * k / p.yaw_candidates;
    int hits = 0;
    for (int iy = 0; iy < p.fov_rays_y; ++iy) {
      const double el = p.vfov * (iy / (p.fov_rays_y - 1.0) - 0.5);
      for (int ix = 0; ix < p.fov_rays_x; ++ix) {
        const double az = yaw + p.hfov * (ix / (p.fov_rays_x - 1.0) - 0.5);
        const Vec3 dir(std::cos(el) * std::cos(az), std::cos(el) * std::sin(az),
                       std::sin(el));
        const auto hit = oracles::linear_raycast(env.mesh, pose.position, dir);
        if (hit && hit->t <= p.max_range) ++hits;
      }
    }
    if (hits > best_hits) {
      best_hits = hits;
      best_yaw = yaw;
    }
  }
  const double chosen_yaw = std::atan2(fwd.y(), fwd.x());
  CHECK(wrap_yaw(chosen_yaw) == doctest::Approx(best_yaw).epsilon(1e-9));
}

TEST_CASE("init_pose: deterministic and total-failure cases") {
  RoomParams rp;
  Rng mesh_rng(1);
  const CollisionObject env(make_room(rp, mesh_rng));
  const OccupancyGrid2D grid = rasterize_occupancy(env.mesh, 0.4, 2.0, 0.25);
  Rng r1(9), r2(9);
  const Pose a = init_pose(grid, env, r1);
  const Pose b = init_pose(grid, env, r2);
  CHECK(a.position == b.position);
  CHECK(a.orientation.coeffs() == b.orientation.coeffs());

  OccupancyGrid2D blocked = grid;
  for (auto& c : blocked.cells) c = Cell::Occupied;
  CHECK_THROWS_AS(init_pose(blocked, env, r1), InvalidInput);
}
