#include "dynsim/noise.hpp"

#include <fmt/format.h>

#include <cmath>
#include <cstring>

#include "dynsim/error.hpp"

namespace dynsim {

std::vector<ImuSample> corrupt_imu(std::span<const ImuSample> samples,
                                   const ImuNoiseParams& p, double rate_hz, Rng& rng) {
  if (rate_hz <= 0) throw InvalidInput("corrupt_imu: rate must be positive");
  const double sqrt_f = std::sqrt(rate_hz);
  const double gyro_white = p.gyro_noise_density * sqrt_f;
  const double accel_white = p.accel_noise_density * sqrt_f;
  const double gyro_step = p.gyro_bias_walk / sqrt_f;
  const double accel_step = p.accel_bias_walk / sqrt_f;

  Vec3 gyro_bias = Vec3::Zero();
  Vec3 accel_bias = Vec3::Zero();
  std::vector<ImuSample> out;
  out.reserve(samples.size());
  for (const ImuSample& s : samples) {
    for (int a = 0; a < 3; ++a) gyro_bias[a] += rng.normal(0, gyro_step);
    for (int a = 0; a < 3; ++a) accel_bias[a] += rng.normal(0, accel_step);
    ImuSample n = s;
    for (int a = 0; a < 3; ++a) n.angular_velocity[a] += gyro_bias[a] + rng.normal(0, gyro_white);
    for (int a = 0; a < 3; ++a) n.specific_force[a] += accel_bias[a] + rng.normal(0, accel_white);
    out.push_back(n);
  }
  return out;
}

DepthImage corrupt_depth(const DepthImage& image, const DepthNoiseParams& p, Rng& rng) {
  if (p.max_depth <= 0) throw InvalidInput("corrupt_depth: max_depth must be positive");
  DepthImage out = image;
  for (float& z : out.depths) {
    if (z <= 0.f || z > p.max_depth) {
      z = 0.f;
      continue;
    }
    const double sigma = p.sigma_a + p.sigma_b * static_cast<double>(z) * z;
    const double noisy = z + rng.normal(0, sigma);
    z = (noisy <= 0.0 || noisy > p.max_depth) ? 0.f : static_cast<float>(noisy);
  }
  return out;
}

RollingShutterResult apply_rolling_shutter(GrayImage& frame, double t_frame,
                                           const Trajectory& cam_track,
                                           const RollingShutterParams& p, Rng& rng,
                                           const RowRenderFn* rerender) {
  if (frame.height <= 0 || frame.width <= 0)
    throw InvalidInput("apply_rolling_shutter: empty frame");
  double readout = rng.normal(p.readout_mu, p.readout_sigma);
  while (readout < 0) readout = rng.normal(p.readout_mu, p.readout_sigma);

  if (!cam_track.empty() &&
      (cam_track.begin_time() > t_frame || cam_track.end_time() < t_frame + readout))
    throw InvalidInput(
        fmt::format("pose track [{}, {}] does not cover the readout [{}, {}]",
                    cam_track.begin_time(), cam_track.end_time(), t_frame, t_frame + readout));

  RollingShutterResult result;
  result.readout_s = readout;
  result.row_times.resize(frame.height);
  for (int v = 0; v < frame.height; ++v) {
    const double t_row = t_frame + readout * (static_cast<double>(v) / frame.height);
    result.row_times[v] = t_row;
    if (rerender) {
      const Pose cam = cam_track.sample(t_row);
      (*rerender)(v, cam,
                  std::span<uint8_t>(frame.pixels.data() + static_cast<size_t>(v) * frame.width,
                                     frame.width));
    }
  }
  return result;
}

Rng frame_substream(uint64_t base_seed, uint64_t frame_index) {
  return Rng(base_seed ^ (0x9E3779B97F4A7C15ull * (frame_index + 1)));
}

namespace {

std::vector<uint8_t> encode_row_stamped_image(const GrayImage& img,
                                              std::span<const uint64_t> row_ts) {
  std::vector<uint8_t> out;
  auto put32 = [&](uint32_t v) {
    const size_t at = out.size();
    out.resize(at + 4);
    std::memcpy(out.data() + at, &v, 4);
  };
  put32(static_cast<uint32_t>(img.width));
  put32(static_cast<uint32_t>(img.height));
  const size_t at = out.size();
  out.resize(at + row_ts.size() * 8);
  std::memcpy(out.data() + at, row_ts.data(), row_ts.size() * 8);
  out.insert(out.end(), img.pixels.begin(), img.pixels.end());
  return out;
}

}  // namespace

Log add_noise_channels(const Log& log, const NoiseConfig& config, uint64_t seed) {
  Rng master(seed);
  const uint64_t imu_seed = master.next_u64();
  const uint64_t depth_seed = master.next_u64();
  const uint64_t rs_seed = master.next_u64();

  Log out;
  out.set_channels(log.channels());
  out.mutable_records() = log.records();
  out.rebuild_index_state();

  struct Job {
    uint16_t source_id;
    uint16_t noisy_id;
    enum Kind { Imu, Depth, Rgb } kind;
  };
  std::vector<Job> jobs;
  for (const auto& ch : log.channels()) {
    auto base_name = [&](const char* suffix) {
      return ch.name.size() >= strlen(suffix) &&
             ch.name.compare(ch.name.size() - strlen(suffix), strlen(suffix), suffix) == 0;
    };
    if (config.imu_enabled && base_name("imu") && ch.payload_type == "f64x6")
      jobs.push_back({ch.id, out.add_channel(ch.name + ".noisy", ch.rate_hz, "f64x6"),
                      Job::Imu});
    else if (config.depth_enabled && base_name("depth") && ch.payload_type == "img.depth32")
      jobs.push_back({ch.id, out.add_channel(ch.name + ".noisy", ch.rate_hz, "img.depth32"),
                      Job::Depth});
    else if (config.rolling_shutter_enabled && base_name("rgb") && ch.payload_type == "img.gray8")
      jobs.push_back({ch.id,
                      out.add_channel(ch.name + ".noisy", ch.rate_hz, "img.gray8.rows"),
                      Job::Rgb});
  }

  for (const auto& job : jobs) {
    const auto records = log.channel_records(job.source_id);
    if (job.kind == Job::Imu) {
      std::vector<ImuSample> samples;
      samples.reserve(records.size());
      for (const auto* r : records)
        samples.push_back(decode_imu(r->payload, r->timestamp_ns * 1e-9));
      Rng rng(imu_seed ^ job.source_id);
      const double rate = log.channel_by_id(job.source_id).rate_hz;
      const auto noisy = corrupt_imu(samples, config.imu, rate, rng);
      for (size_t i = 0; i < records.size(); ++i)
        out.append({job.noisy_id, records[i]->flags, records[i]->index,
                    records[i]->timestamp_ns, encode_imu(noisy[i])});
    } else if (job.kind == Job::Depth) {
      for (size_t i = 0; i < records.size(); ++i) {
        Rng rng = frame_substream(depth_seed ^ job.source_id, records[i]->index);
        const DepthImage noisy =
            corrupt_depth(decode_depth_image(records[i]->payload), config.depth, rng);
        out.append({job.noisy_id, records[i]->flags, records[i]->index,
                    records[i]->timestamp_ns,
                    encode_depth_image(noisy.width, noisy.height, noisy.depths)});
      }
    } else {
      for (size_t i = 0; i < records.size(); ++i) {
        Rng rng = frame_substream(rs_seed ^ job.source_id, records[i]->index);
        GrayImage img = decode_gray_image(records[i]->payload);
        const double t_frame = records[i]->timestamp_ns * 1e-9;
        const RollingShutterResult rs =
            apply_rolling_shutter(img, t_frame, Trajectory{}, config.rolling_shutter, rng);
        std::vector<uint64_t> row_ts(rs.row_times.size());
        for (size_t v = 0; v < row_ts.size(); ++v)
          row_ts[v] = static_cast<uint64_t>(std::llround(rs.row_times[v] * 1e9));
        out.append({job.noisy_id, records[i]->flags, records[i]->index,
                    records[i]->timestamp_ns, encode_row_stamped_image(img, row_ts)});
      }
    }
  }
  return out;
}

}  // namespace dynsim
