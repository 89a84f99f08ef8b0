#include "dynsim/sim_loop.hpp"

#include <fmt/format.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>

#include "dynsim/error.hpp"
#include "dynsim/log_repair.hpp"
#include "dynsim/sensors.hpp"

namespace dynsim {

std::string robot_prefix(size_t robot_index) {
  return robot_index == 0 ? std::string() : fmt::format("r{}/", robot_index);
}

JointTrajectory rollout_robot(const SimConfig& config, const RobotSetup& setup) {
  const uint64_t steps = config.total_steps();
  const double dt = config.dt();
  JointTrajectory traj;
  traj.reserve(steps + 1);

  RobotState state;
  state.q = setup.initial_q;
  WaypointFollower follower(setup.waypoints, setup.waypoint_tol);
  PidState pid;
  traj.push_back(state.q);
  for (uint64_t k = 0; k < steps; ++k) {
    const Setpoint sp = follower.next(state);
    const JointCommand cmd = controller_step(state, sp, setup.gains, pid, setup.limits, dt);
    state = integrate(state, cmd, setup.limits, dt);
    traj.push_back(state.q);
  }
  return traj;
}

namespace {

Pose body_pose(const Vec6& q) {
  return Pose(q.head<3>(), quat_from_rpy(q[kRoll], q[kPitch], q[kYaw]));
}

Vec6 finite_difference_twist(const Vec6& prev, const Vec6& curr, double dt) {
  Vec6 v;
  for (int j = 0; j < 6; ++j) {
    const double d = j == kYaw ? wrap_angle(curr[j] - prev[j]) : curr[j] - prev[j];
    v[j] = d / dt;
  }
  return v;
}

class BundleWriter {
 public:
  explicit BundleWriter(std::string dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
    index_.open(dir_ + "/bundles.idx", std::ios::trunc);
    if (!index_) throw InvalidInput(fmt::format("cannot write bundle index in '{}'", dir_));
  }

  void write(uint64_t frame, uint64_t step, uint64_t ts, const Pose& cam_pose,
             const RenderResult& view, const std::vector<ObjectBoxes>& boxes) {
    const std::string file = fmt::format("bundle_{:06}.bin", frame);
    std::ofstream f(dir_ + "/" + file, std::ios::binary | std::ios::trunc);
    auto put = [&f](const auto& v) {
      f.write(reinterpret_cast<const char*>(&v), sizeof(v));
    };
    f.write("DSFB", 4);
    put(uint16_t{1});
    put(uint16_t{0});
    put(step);
    put(ts);
    const double pose7[7] = {cam_pose.position.x(),    cam_pose.position.y(),
                             cam_pose.position.z(),    cam_pose.orientation.x(),
                             cam_pose.orientation.y(), cam_pose.orientation.z(),
                             cam_pose.orientation.w()};
    f.write(reinterpret_cast<const char*>(pose7), sizeof(pose7));
    put(uint32_t(view.width));
    put(uint32_t(view.height));
    f.write(reinterpret_cast<const char*>(view.depth.data()),
            static_cast<std::streamsize>(view.depth.size() * 4));
    f.write(reinterpret_cast<const char*>(view.instance.data()),
            static_cast<std::streamsize>(view.instance.size() * 4));
    put(uint32_t(boxes.size()));
    for (const auto& b : boxes) {
      put(b.id);
      put(uint8_t(b.tight.has_value()));
      put(uint8_t(b.loose.has_value()));
      put(uint16_t{0});
      const Box2D tight = b.tight.value_or(Box2D{});
      const Box2D loose = b.loose.value_or(Box2D{});
      const double rows[14] = {tight.x0,        tight.y0,        tight.x1,        tight.y1,
                               loose.x0,        loose.y0,        loose.x1,        loose.y1,
                               b.box3d_min.x(), b.box3d_min.y(), b.box3d_min.z(),
                               b.box3d_max.x(), b.box3d_max.y(), b.box3d_max.z()};
      f.write(reinterpret_cast<const char*>(rows), sizeof(rows));
    }
    index_ << frame << " " << step << " " << ts << " " << file << "\n";
  }

 private:
  std::string dir_;
  std::ofstream index_;
};

struct RobotChannels {
  uint16_t imu, tf, joints, cam_pose, odom, rgb, depth;
};

}  // namespace

Log emit_log(const SimConfig& config, const Scene& scene,
             const std::vector<JointTrajectory>& trajectories, const EmitOptions& options) {
  config.validate();
  const uint64_t steps = config.total_steps();
  const uint64_t bootstrap = config.bootstrap_steps();
  const double dt = config.dt();
  for (const auto& traj : trajectories)
    if (traj.size() != steps + 1)
      throw InvalidInput(fmt::format("trajectory holds {} poses, expected {}", traj.size(),
                                     steps + 1));

  Log log;
  const uint16_t ch_clock = log.add_channel("clock", config.rates.clock, "u64");
  const uint16_t ch_start = log.add_channel(kStartChannel, 0, "u64");
  std::vector<RobotChannels> robot_channels;
  for (size_t r = 0; r < trajectories.size(); ++r) {
    const std::string p = robot_prefix(r);
    RobotChannels ch;
    ch.imu = log.add_channel(p + "imu", config.rates.imu, "f64x6");
    ch.tf = log.add_channel(p + "tf", config.rates.tf, "tf");
    ch.joints = log.add_channel(p + "joints", config.rates.joints, "f64x12");
    ch.cam_pose = log.add_channel(p + "cam_pose", config.rates.cam_pose, "f64x7");
    ch.odom = log.add_channel(p + "odom", config.rates.odom, "f64x13");
    ch.rgb = log.add_channel(p + "rgb", config.rates.rgb, "img.gray8");
    ch.depth = log.add_channel(p + "depth", config.rates.depth, "img.depth32");
    robot_channels.push_back(ch);
  }
  struct ExtraCam {
    CameraConfig config;
    uint16_t rgb, depth;
  };
  std::vector<ExtraCam> extra_cams;
  for (const auto& cam : options.extra_cameras) {
    ExtraCam e;
    e.config = cam;
    e.rgb = log.add_channel(cam.name + ".rgb", config.rates.rgb, "img.gray8");
    e.depth = log.add_channel(cam.name + ".depth", config.rates.depth, "img.depth32");
    extra_cams.push_back(e);
  }

  std::optional<BundleWriter> bundles;
  if (!options.bundle_dir.empty()) bundles.emplace(options.bundle_dir);

  std::unordered_map<uint16_t, uint64_t> idx;       // per-channel next index
  auto emit = [&](uint16_t channel, uint8_t flags, uint64_t ts, std::vector<uint8_t> payload) {
    log.append({channel, flags, idx[channel]++, ts, std::move(payload)});
  };

  const uint64_t div_tf = config.physics_hz / config.rates.tf;
  const uint64_t div_joints = config.physics_hz / config.rates.joints;
  const uint64_t div_cam = config.physics_hz / config.rates.cam_pose;
  const uint64_t div_odom = config.physics_hz / config.rates.odom;
  const uint64_t div_rgb = config.physics_hz / config.rates.rgb;
  const uint64_t div_depth = config.physics_hz / config.rates.depth;

  uint64_t bundle_frame = 0;
  for (uint64_t k = 0; k < steps; ++k) {
    const uint64_t ts = config.step_timestamp_ns(k);
    const uint8_t flags = k < bootstrap ? kFlagPreStart : 0;
    const double t = static_cast<double>(k) * dt;

    emit(ch_clock, flags, ts, encode_u64(k));
    if (k == bootstrap) emit(ch_start, 0, ts, encode_u64(k));

    // One snapshot per render step, shared by every camera.
    std::optional<SceneSnapshot> snap;
    const bool render_step = k % div_rgb == 0 || k % div_depth == 0;
    if (render_step) snap.emplace(snapshot_scene(scene, t));

    for (size_t r = 0; r < trajectories.size(); ++r) {
      const JointTrajectory& traj = trajectories[r];
      const RobotChannels& ch = robot_channels[r];
      const Vec6& q = traj[k];
      const Pose body = body_pose(q);

      {  // imu at every physics step
        const Pose prev = body_pose(traj[k == 0 ? 0 : k - 1]);
        const Pose next = body_pose(traj[k + 1]);
        const ImuSample sample = synth_imu(prev, body, next, dt, config.gravity);
        emit(ch.imu, flags, ts, encode_imu(sample));
      }
      if (k % div_tf == 0) {
        const std::string p = robot_prefix(r);
        const TfEntry entries[3] = {
            {"world", p + "body", body},
            {p + "body", p + "cam_low", config.cam_low.mount},
            {p + "body", p + "cam_high", config.cam_high.mount},
        };
        emit(ch.tf, flags, ts, encode_tf(entries));
      }
      if (k % div_joints == 0) {
        const Vec6 qdot = k == 0 ? Vec6::Zero().eval()
                                 : finite_difference_twist(traj[k - 1], q, dt);
        emit(ch.joints, flags, ts, encode_joint_state(q, qdot));
      }
      if (k % div_cam == 0)
        emit(ch.cam_pose, flags, ts, encode_pose(body.compose(config.cam_low.mount)));
      if (k % div_odom == 0) {
        const Vec6 qdot = k == 0 ? Vec6::Zero().eval()
                                 : finite_difference_twist(traj[k - 1], q, dt);
        emit(ch.odom, flags, ts, encode_odom(body, qdot));
      }
      if (k % div_rgb == 0 || k % div_depth == 0) {
        const Pose cam = body.compose(config.cam_low.mount);
        const RenderResult view = render_view(cam, config.cam_low.intrinsics, scene, *snap);
        if (k % div_rgb == 0)
          emit(ch.rgb, flags, ts,
               encode_gray_image(view.width, view.height, view.shaded));
        if (k % div_depth == 0)
          emit(ch.depth, flags, ts,
               encode_depth_image(view.width, view.height, view.depth));
      }

      if (r == 0) {
        for (const auto& cam : extra_cams) {
          if (k % div_rgb != 0 && k % div_depth != 0) continue;
          const Pose cam_world = body.compose(cam.config.mount);
          const RenderResult view =
              render_view(cam_world, cam.config.intrinsics, scene, *snap);
          if (k % div_rgb == 0)
            emit(cam.rgb, flags, ts, encode_gray_image(view.width, view.height, view.shaded));
          if (k % div_depth == 0)
            emit(cam.depth, flags, ts,
                 encode_depth_image(view.width, view.height, view.depth));
        }
        if (bundles && k % div_rgb == 0) {
          const Pose cam = body.compose(config.cam_high.mount);
          const RenderResult view = render_view(cam, config.cam_high.intrinsics, scene, *snap);
          const auto boxes = extract_boxes(view, *snap, cam, config.cam_high.intrinsics);
          bundles->write(bundle_frame++, k, ts, cam, view, boxes);
        }
      }
    }
  }
  return log;
}

RunResult run_experiment(const SimConfig& config, const Scene& scene,
                         const std::vector<RobotSetup>& robots, const EmitOptions& options) {
  config.validate();
  if (robots.empty()) throw InvalidInput("run_experiment: need at least one robot");
  RunResult result;
  result.trajectories.reserve(robots.size());
  for (const auto& setup : robots) result.trajectories.push_back(rollout_robot(config, setup));
  result.log = emit_log(config, scene, result.trajectories, options);
  return result;
}

}  // namespace dynsim
