#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "dynsim/error.hpp"
#include "dynsim/log_container.hpp"
#include "dynsim/log_repair.hpp"
#include "dynsim/primitives.hpp"
#include "dynsim/procedural.hpp"
#include "dynsim/sensors.hpp"
#include "dynsim/sim_loop.hpp"

using namespace dynsim;

namespace {

SimConfig tiny_config(double duration_s) {
  SimConfig cfg;
  cfg.duration_s = duration_s;
  cfg.cam_low.intrinsics = {16, 12, 86.0, 57.0};
  cfg.cam_high.intrinsics = {32, 24, 86.0, 57.0};
  return cfg;
}

Pose looking_along_x(const Vec3& position) {
  return Pose(position, CameraConfig::forward_mount(Vec3::Zero()).orientation);
}

Scene room_scene(uint64_t seed, int walkers, int flyers) {
  Scene scene;
  RoomParams rp;
  rp.inner_size = Vec2(6, 5);
  rp.furniture = 2;
  Rng rng(seed);
  TriMesh room = make_room(rp, rng);
  room.asset_id = kEnvironmentId;
  scene.env = CollisionObject(std::move(room));
  uint32_t id = 2;
  for (int i = 0; i < walkers; ++i) {
    WalkerParams wp;
    wp.path_length = 2.0;
    SceneObject obj;
    obj.asset = gen_walker(rng, wp);
    obj.place = Pose(Vec3(1.5 + i, 2.0, 0), quat_from_rpy(0, 0, rng.uniform(0, 6.28)));
    obj.id = id++;
    scene.objects.push_back(std::move(obj));
  }
  for (int i = 0; i < flyers; ++i) {
    FlyerParams fp;
    fp.bounds = Eigen::AlignedBox3d(Vec3(0.5, 0.5, 0.5), Vec3(5.5, 4.5, 2.2));
    fp.duration = 8.0;
    SceneObject obj;
    obj.asset = gen_flyer(rng, fp);
    obj.place = Pose::identity();
    obj.id = id++;
    scene.objects.push_back(std::move(obj));
  }
  return scene;
}

RobotSetup basic_robot() {
  RobotSetup setup;
  setup.limits = JointLimits::free_flight(Vec3(0.3, 0.3, 0.3), Vec3(5.7, 4.7, 2.3));
  setup.initial_q << 3, 2.5, 1.2, 0, 0, 0;
  Vec6 goal1, goal2;
  goal1 << 4.5, 3.5, 1.4, 0, 0, 1.0;
  goal2 << 1.5, 1.0, 1.0, 0, 0, 4.0;
  setup.waypoints = {goal1, goal2};
  return setup;
}

}  // namespace

TEST_CASE("schedule_channels: rate arithmetic at steps 0, 1, 8") {
  const SimConfig cfg = tiny_config(2.0);
  auto due0 = schedule_channels(0, cfg);
  CHECK(due0.size() == 8);  // every periodic channel fires at k=0

  auto due1 = schedule_channels(1, cfg);
  REQUIRE(due1.size() == 2);
  CHECK(due1[0] == Channel::Clock);
  CHECK(due1[1] == Channel::Imu);

  auto due8 = schedule_channels(8, cfg);
  CHECK(std::count(due8.begin(), due8.end(), Channel::Rgb) == 1);
  CHECK(std::count(due8.begin(), due8.end(), Channel::Depth) == 1);
  CHECK(std::count(due8.begin(), due8.end(), Channel::CamPose) == 1);

  // the one-shot start fires exactly at the first post-bootstrap step
  CHECK(std::count(due0.begin(), due0.end(), Channel::Start) == 0);
  auto due240 = schedule_channels(240, cfg);
  CHECK(std::count(due240.begin(), due240.end(), Channel::Start) == 1);
  auto due241 = schedule_channels(241, cfg);
  CHECK(std::count(due241.begin(), due241.end(), Channel::Start) == 0);
}

TEST_CASE("run_experiment: channel counts, monotone stamps, start record") {
  const SimConfig cfg = tiny_config(2.0);
  const Scene scene = room_scene(3, 1, 1);
  const RunResult run = run_experiment(cfg, scene, {basic_robot()});
  const Log& log = run.log;

  const struct {
    const char* name;
    uint64_t rate;
  } expected[] = {{"clock", 240}, {"imu", 240},     {"tf", 120},  {"joints", 120},
                  {"cam_pose", 60}, {"odom", 60},   {"rgb", 30},  {"depth", 30}};
  for (const auto& e : expected) {
    const ChannelMeta* ch = log.find_channel(e.name);
    REQUIRE(ch != nullptr);
    CHECK(log.count(ch->id, /*pre_start=*/false) == e.rate * 2);  // duration 2 s
    CHECK(log.count(ch->id, /*pre_start=*/true) == e.rate * 1);   // bootstrap 1 s
  }
  const ChannelMeta* start = log.find_channel(kStartChannel);
  REQUIRE(start != nullptr);
  CHECK(log.count(start->id) == 1);

  for (const auto& ch : log.channels()) {
    const auto records = log.channel_records(ch.id);
    for (size_t i = 1; i < records.size(); ++i) {
      CHECK(records[i]->timestamp_ns >= records[i - 1]->timestamp_ns);
      CHECK(records[i]->index == records[i - 1]->index + 1);
    }
  }
}

TEST_CASE("run_experiment: byte-identical across repeated runs") {
  const SimConfig cfg = tiny_config(1.0);
  const Scene scene = room_scene(7, 1, 2);
  const RunResult a = run_experiment(cfg, scene, {basic_robot()});
  const RunResult b = run_experiment(cfg, scene, {basic_robot()});
  CHECK(serialize_log(a.log) == serialize_log(b.log));
}

TEST_CASE("render_depth: fronto-parallel wall reads its range everywhere") {
  Scene scene;
  TriMesh wall = make_box(Vec3(2.075, 0, 1), Vec3(0.15, 8, 4));  // face at x = 2
  wall.asset_id = kEnvironmentId;
  scene.env = CollisionObject(std::move(wall));
  const SceneSnapshot snap = snapshot_scene(scene, 0.0);
  const CameraIntrinsics K{32, 24, 60.0, 45.0};
  const auto depth = render_depth(looking_along_x(Vec3(0, 0, 1)), K, scene, snap);
  CHECK(depth[static_cast<size_t>(12) * 32 + 16] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(*std::min_element(depth.begin(), depth.end()) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("render_depth: empty scene is all zeros, consistent with instances") {
  Scene scene;  // no geometry at all
  const SceneSnapshot snap;
  const CameraIntrinsics K{16, 12, 60.0, 45.0};
  const RenderResult view = render_view(looking_along_x(Vec3(0, 0, 1)), K, scene, snap);
  for (size_t i = 0; i < view.depth.size(); ++i) {
    CHECK(view.depth[i] == 0.f);
    CHECK(view.instance[i] == kBackgroundId);
  }
}

TEST_CASE("render_depth: tilted plane matches the analytic ray solution") {
  Scene scene;
  TriMesh plane;
  plane.vertices = {Vec3(2, -10, -10), Vec3(6, -10, 10), Vec3(6, 10, 10), Vec3(2, 10, -10)};
  plane.triangles = {{0, 1, 2}, {0, 2, 3}};
  plane.asset_id = kEnvironmentId;
  scene.env = CollisionObject(std::move(plane));
  const SceneSnapshot snap = snapshot_scene(scene, 0.0);
  const CameraIntrinsics K{48, 36, 70.0, 50.0};
  const Pose cam = looking_along_x(Vec3(0, 0, 0));
  const auto depth = render_depth(cam, K, scene, snap);

  const Vec3 p0(2, 0, -10);
  const Vec3 n = Vec3(0.2, 0, -0.04).normalized();  // plane normal from the two edges
  for (int v = 0; v < K.height; ++v)
    for (int u = 0; u < K.width; ++u) {
      const Vec3 dir = cam.orientation * K.pixel_ray(u, v);
      const double t = n.dot(p0 - cam.position) / n.dot(dir);
      const double measured = depth[static_cast<size_t>(v) * K.width + u];
      if (t > 0)
        CHECK(measured == doctest::Approx(t).epsilon(1e-4));
    }
}

TEST_CASE("render_instances: coverage, ordering and occlusion") {
  Scene scene;
  TriMesh floor = make_box(Vec3(0, 0, -1.2), Vec3(30, 30, 0.2));
  floor.asset_id = kEnvironmentId;
  scene.env = CollisionObject(std::move(floor));

  AnimatedAsset near_cube, far_cube;
  near_cube.base = make_box(Vec3(0, 0, 0), Vec3(0.8, 0.8, 0.8));
  near_cube.clip.frame_rate = 30;
  near_cube.clip.pose_frames = {Pose(Vec3(2.5, 0, 1), Quat::Identity())};
  far_cube.base = make_box(Vec3(0, 0, 0), Vec3(0.8, 0.8, 0.8));
  far_cube.clip.frame_rate = 30;
  far_cube.clip.pose_frames = {Pose(Vec3(5, 0, 1), Quat::Identity())};
  scene.objects.push_back({near_cube, Pose::identity(), 2});
  scene.objects.push_back({far_cube, Pose::identity(), 3});

  const SceneSnapshot snap = snapshot_scene(scene, 0.0);
  const CameraIntrinsics K{64, 48, 70.0, 50.0};
  const auto inst = render_instances(looking_along_x(Vec3(0, 0, 1)), K, scene, snap);

  const size_t near_count = std::count(inst.begin(), inst.end(), 2u);
  const size_t far_count = std::count(inst.begin(), inst.end(), 3u);
  CHECK(near_count > 0);
  CHECK(near_count > far_count);  // nearer object projects larger
  // center pixel is the near cube; the far one sits exactly behind it
  CHECK(inst[static_cast<size_t>(24) * 64 + 32] == 2u);
}

TEST_CASE("extract_boxes: visibility, occlusion and frustum cases") {
  Scene scene;
  TriMesh floor = make_box(Vec3(0, 0, -1.2), Vec3(30, 30, 0.2));
  floor.asset_id = kEnvironmentId;
  scene.env = CollisionObject(std::move(floor));

  AnimatedAsset cube;
  cube.base = make_box(Vec3(0, 0, 0), Vec3(0.8, 0.8, 0.8));
  cube.clip.frame_rate = 30;
  cube.clip.pose_frames = {Pose(Vec3(3, 0, 1), Quat::Identity())};
  scene.objects.push_back({cube, Pose::identity(), 2});

  const CameraIntrinsics K{64, 48, 70.0, 50.0};
  const Pose cam = looking_along_x(Vec3(0, 0, 1));

  SUBCASE("fully visible: tight approximately equals loose") {
    const SceneSnapshot snap = snapshot_scene(scene, 0.0);
    const RenderResult view = render_view(cam, K, scene, snap);
    const auto boxes = extract_boxes(view, snap, cam, K);
    REQUIRE(boxes.size() == 1);
    REQUIRE(boxes[0].tight.has_value());
    REQUIRE(boxes[0].loose.has_value());
    CHECK(std::abs(boxes[0].tight->x0 - boxes[0].loose->x0) <= 1.5);
    CHECK(std::abs(boxes[0].tight->x1 - boxes[0].loose->x1) <= 1.5);
    CHECK(std::abs(boxes[0].tight->y0 - boxes[0].loose->y0) <= 1.5);
    CHECK(std::abs(boxes[0].tight->y1 - boxes[0].loose->y1) <= 1.5);
    CHECK(boxes[0].box3d_min.x() == doctest::Approx(2.6));
    CHECK(boxes[0].box3d_max.x() == doctest::Approx(3.4));
    // every instance pixel inside the tight box (by construction of the census)
    for (int v = 0; v < view.height; ++v)
      for (int u = 0; u < view.width; ++u)
        if (view.instance[view.index(u, v)] == 2u) {
          CHECK(u + 0.5 >= boxes[0].tight->x0);
          CHECK(u + 0.5 <= boxes[0].tight->x1);
          CHECK(v + 0.5 >= boxes[0].tight->y0);
          CHECK(v + 0.5 <= boxes[0].tight->y1);
        }
  }

  SUBCASE("half occluded: tight strictly inside loose") {
    AnimatedAsset blocker;
    blocker.base = make_box(Vec3(0, 0, 0), Vec3(0.2, 1.0, 2.0));
    blocker.clip.frame_rate = 30;
    blocker.clip.pose_frames = {Pose(Vec3(1.5, 0.45, 1), Quat::Identity())};
    scene.objects.push_back({blocker, Pose::identity(), 3});
    const SceneSnapshot snap = snapshot_scene(scene, 0.0);
    const RenderResult view = render_view(cam, K, scene, snap);
    const auto boxes = extract_boxes(view, snap, cam, K);
    REQUIRE(boxes.size() == 2);
    REQUIRE(boxes[0].tight.has_value());
    // optical x = -world y: the +y blocker hides the image's left side
    CHECK(boxes[0].tight->x0 > boxes[0].loose->x0 + 2.0);
  }

  SUBCASE("behind the camera: no boxes at all") {
    scene.objects[0].asset.clip.pose_frames = {Pose(Vec3(-3, 0, 1), Quat::Identity())};
    const SceneSnapshot snap = snapshot_scene(scene, 0.0);
    const RenderResult view = render_view(cam, K, scene, snap);
    const auto boxes = extract_boxes(view, snap, cam, K);
    REQUIRE(boxes.size() == 1);
    CHECK_FALSE(boxes[0].tight.has_value());
    CHECK_FALSE(boxes[0].loose.has_value());
  }
}

TEST_CASE("synth_imu: hover measures +g, zero gyro") {
  const Pose hover(Vec3(1, 2, 1.5), quat_from_rpy(0, 0, 1.0));
  const ImuSample s = synth_imu(hover, hover, hover, 1.0 / 240, 9.81);
  CHECK(s.specific_force.x() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.specific_force.y() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.specific_force.z() == doctest::Approx(9.81).epsilon(1e-9));
  CHECK(s.angular_velocity.norm() == 0.0);
}

TEST_CASE("synth_imu: constant velocity is indistinguishable from hover") {
  const Vec3 v(0.4, -0.2, 0.1);
  const double dt = 1.0 / 240;
  const Pose a(Vec3(0, 0, 1), Quat::Identity());
  const Pose b(Vec3(0, 0, 1) + v * dt, Quat::Identity());
  const Pose c(Vec3(0, 0, 1) + 2 * v * dt, Quat::Identity());
  const ImuSample s = synth_imu(a, b, c, dt, 9.81);
  CHECK(s.specific_force.z() == doctest::Approx(9.81).epsilon(1e-9));
  CHECK(s.specific_force.head<2>().norm() == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("synth_imu: uniform circular motion recovers r*omega^2") {
  const double r = 2.0, omega = 0.8, dt = 1.0 / 240;
  auto pose_at = [&](double t) {
    return Pose(Vec3(r * std::cos(omega * t), r * std::sin(omega * t), 1.0),
                Quat::Identity());
  };
  const double t0 = 0.37;
  const ImuSample s = synth_imu(pose_at(t0 - dt), pose_at(t0), pose_at(t0 + dt), dt, 9.81);
  const double centripetal = s.specific_force.head<2>().norm();
  CHECK(centripetal == doctest::Approx(r * omega * omega).epsilon(1e-3));
  CHECK(s.specific_force.z() == doctest::Approx(9.81).epsilon(1e-9));
}

TEST_CASE("synth_imu: yaw spin appears on the gyro z axis") {
  const double wz = 0.5, dt = 1.0 / 240;
  const Pose a(Vec3(0, 0, 1), quat_from_rpy(0, 0, 1.0 - wz * dt));
  const Pose b(Vec3(0, 0, 1), quat_from_rpy(0, 0, 1.0));
  const Pose c(Vec3(0, 0, 1), quat_from_rpy(0, 0, 1.0 + wz * dt));
  const ImuSample s = synth_imu(a, b, c, dt, 9.81);
  CHECK(s.angular_velocity.z() == doctest::Approx(wz).epsilon(1e-9));
  CHECK(std::abs(s.angular_velocity.x()) < 1e-12);
}

TEST_CASE("synth_imu: window shorter than 3 poses rejected") {
  const Pose p;
  const Pose window[2] = {p, p};
  CHECK_THROWS_AS(synth_imu(std::span<const Pose>(window, 2), 1.0 / 240, 9.81), InvalidInput);
}

TEST_CASE("low-res camera equals box-downsampled high-res at shared FOV") {
  Scene scene;
  TriMesh plane;
  plane.vertices = {Vec3(2.5, -12, -12), Vec3(5.5, -12, 12), Vec3(5.5, 12, 12),
                    Vec3(2.5, 12, -12)};
  plane.triangles = {{0, 1, 2}, {0, 2, 3}};
  plane.asset_id = kEnvironmentId;
  scene.env = CollisionObject(std::move(plane));
  const SceneSnapshot snap = snapshot_scene(scene, 0.0);

  const CameraIntrinsics low{32, 24, 70.0, 50.0};
  const CameraIntrinsics high{96, 72, 70.0, 50.0};  // 3x in both axes, same FOV
  const Pose cam = looking_along_x(Vec3(0, 0, 0));
  const auto dl = render_depth(cam, low, scene, snap);
  const auto dh = render_depth(cam, high, scene, snap);

  for (int v = 0; v < low.height; ++v)
    for (int u = 0; u < low.width; ++u) {
      double mean = 0;
      for (int dv = 0; dv < 3; ++dv)
        for (int du = 0; du < 3; ++du)
          mean += dh[static_cast<size_t>(3 * v + dv) * high.width + (3 * u + du)];
      mean /= 9.0;
      const double lo = dl[static_cast<size_t>(v) * low.width + u];
      CHECK(lo == doctest::Approx(mean).epsilon(5e-3));
    }
}

TEST_CASE("render consistency: depth zero iff instance zero") {
  const Scene scene = room_scene(11, 1, 2);
  const SceneSnapshot snap = snapshot_scene(scene, 0.5);
  const CameraIntrinsics K{48, 36, 86.0, 57.0};
  const RenderResult view = render_view(looking_along_x(Vec3(3, 2.5, 1.2)), K, scene, snap);
  for (size_t i = 0; i < view.depth.size(); ++i)
    CHECK((view.depth[i] == 0.f) == (view.instance[i] == kBackgroundId));
}

TEST_CASE("config validation rejects non-divisor rates") {
  SimConfig cfg = tiny_config(1.0);
  cfg.rates.rgb = 7;  // does not divide 240
  CHECK_THROWS_AS(cfg.validate(), InvalidInput);
  SimConfig bad_duration = tiny_config(1.0);
  bad_duration.duration_s = 0.9999;  // not a whole number of steps
  CHECK_THROWS_AS(bad_duration.validate(), InvalidInput);
}
