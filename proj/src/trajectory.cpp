#include "dynsim/trajectory.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dynsim/error.hpp"

namespace dynsim {

void Trajectory::push(double t, const Pose& pose) {
  if (!poses.empty() && t <= poses.back().t)
    throw InvalidInput(
        fmt::format("trajectory stamps must increase strictly ({} after {})", t,
                    poses.back().t));
  poses.push_back({t, pose});
}

Pose Trajectory::sample(double t) const {
  if (poses.empty()) throw InvalidInput("cannot sample an empty trajectory");
  if (t <= poses.front().t) return poses.front().pose;
  if (t >= poses.back().t) return poses.back().pose;
  const auto it = std::lower_bound(poses.begin(), poses.end(), t,
                                   [](const StampedPose& s, double v) { return s.t < v; });
  const StampedPose& b = *it;
  const StampedPose& a = *(it - 1);
  const double alpha = (t - a.t) / (b.t - a.t);
  return Pose(a.pose.position + alpha * (b.pose.position - a.pose.position),
              a.pose.orientation.slerp(alpha, b.pose.orientation));
}

Trajectory load_tum(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidInput(fmt::format("cannot open trajectory file '{}'", path));
  Trajectory traj;
  std::string line;
  size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream is(line);
    double t, tx, ty, tz, qx, qy, qz, qw;
    if (!(is >> t)) continue;
    if (!(is >> tx >> ty >> tz >> qx >> qy >> qz >> qw))
      throw ParseError(fmt::format("'{}' line {}: expected 8 numbers", path, lineno), lineno);
    Pose pose;
    pose.position = Vec3(tx, ty, tz);
    pose.orientation.x() = qx;
    pose.orientation.y() = qy;
    pose.orientation.z() = qz;
    pose.orientation.w() = qw;
    traj.push(t, pose);
  }
  return traj;
}

void save_tum(const Trajectory& traj, const std::string& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw InvalidInput(fmt::format("cannot write trajectory file '{}'", path));
  f << "# timestamp tx ty tz qx qy qz qw\n";
  for (const auto& s : traj.poses) {
    const Pose& p = s.pose;
    f << fmt::format("{:.9f} {:.9g} {:.9g} {:.9g} {:.17g} {:.17g} {:.17g} {:.17g}\n", s.t,
                     p.position.x(), p.position.y(), p.position.z(), p.orientation.x(),
                     p.orientation.y(), p.orientation.z(), p.orientation.w());
  }
}

}  // namespace dynsim
