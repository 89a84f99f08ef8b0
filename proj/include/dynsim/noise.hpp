#pragma once

#include <functional>

#include "dynsim/log.hpp"
#include "dynsim/payloads.hpp"
#include "dynsim/rng.hpp"
#include "dynsim/trajectory.hpp"

namespace dynsim {

/// Continuous-time noise densities; discrete per-sample sigmas follow
/// from the sampling rate f: white sigma = density*sqrt(f), bias
/// random-walk step sigma = density/sqrt(f).
struct ImuNoiseParams {
  double gyro_noise_density = 1.7e-4;   // rad/s/sqrt(Hz)
  double accel_noise_density = 2e-3;    // m/s^2/sqrt(Hz)
  double gyro_bias_walk = 1e-5;         // rad/s^2/sqrt(Hz)
  double accel_bias_walk = 3e-3;        // m/s^3/sqrt(Hz)
};

/// Pure: returns corrupted copies. Draw order per sample: gyro bias xyz,
/// accel bias xyz, gyro white xyz, accel white xyz.
std::vector<ImuSample> corrupt_imu(std::span<const ImuSample> samples,
                                   const ImuNoiseParams& params, double rate_hz, Rng& rng);

struct DepthNoiseParams {
  double max_depth = 3.5;     // m; 3.5 and 5.0 are the documented choices
  double sigma_a = 0.001;     // sigma(z) = a + b*z^2
  double sigma_b = 0.0019;
};

/// Invalid sentinel is 0. Pixels beyond max_depth (or already invalid)
/// become invalid; valid pixels get axial noise, with results that leave
/// (0, max_depth] mapped to the sentinel. One normal draw per valid
/// pixel, row-major.
DepthImage corrupt_depth(const DepthImage& image, const DepthNoiseParams& params, Rng& rng);

struct RollingShutterParams {
  double readout_mu = 0.015;     // s, full-frame readout
  double readout_sigma = 0.006;  // s
};

/// Renders one image row at the given camera pose into `row` (width px).
using RowRenderFn =
    std::function<void(int row, const Pose& cam_pose, std::span<uint8_t> row)>;

struct RollingShutterResult {
  double readout_s = 0;
  std::vector<double> row_times;  // absolute seconds, one per row
};

/// Samples a truncated-normal readout (resampled until >= 0), stamps row
/// i at t_frame + (i/rows)*readout and, when `rerender` is given,
/// replaces each row with one rendered at the pose track's interpolated
/// camera pose for that row time. The track must cover the readout span.
RollingShutterResult apply_rolling_shutter(GrayImage& frame, double t_frame,
                                           const Trajectory& cam_track,
                                           const RollingShutterParams& params, Rng& rng,
                                           const RowRenderFn* rerender = nullptr);

struct NoiseConfig {
  ImuNoiseParams imu;
  DepthNoiseParams depth;
  RollingShutterParams rolling_shutter;
  bool imu_enabled = true;
  bool depth_enabled = true;
  bool rolling_shutter_enabled = true;
};

/// Returns a log extended with ".noisy" channels. imu.noisy mirrors the
/// imu stream through corrupt_imu; depth.noisy runs corrupt_depth with a
/// per-frame substream derived from (seed, frame); rgb.noisy carries
/// per-row timestamps ("img.gray8.rows": w, h, h x u64 row stamps,
/// pixels) with the image untouched (re-rendering needs world access and
/// lives on the replay path). Applies to every robot's channels.
Log add_noise_channels(const Log& log, const NoiseConfig& config, uint64_t seed);

/// Stable per-frame rng substream: seed mixed with the frame index.
Rng frame_substream(uint64_t base_seed, uint64_t frame_index);

}  // namespace dynsim
