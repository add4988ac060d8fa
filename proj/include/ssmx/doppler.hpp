#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssmx/point_cloud.hpp"
#include "ssmx/trajectory.hpp"

namespace ssmx {

inline constexpr double kSpeedOfLight = 2.99792458e8;  // m/s

struct Receiver {
  Eigen::Vector2d position = Eigen::Vector2d::Zero();  // meters
  std::string id;
};

/// Received-frequency time series at one receiver, resampled onto the
/// transmit time grid.
struct DopplerTrace {
  Vector times;        // N, seconds (transmit grid)
  Vector frequencies;  // N, Hz
  std::string receiver_id;
  double carrier = 0.0;  // Hz

  Index size() const { return frequencies.size(); }
};

struct NoiseSpec {
  double relative_std = 0.0;  // fraction of the per-trace max |shift|
  std::uint64_t seed = 0;
};

/// f_recvd(t) = (1 - rdot(t)/c) * carrier, with rdot the radial speed
/// (positive receding) taken from finite differences of the range. With
/// apply_delay, each sample is stamped at t + r(t)/c and linearly resampled
/// back onto the uniform transmit grid. Throws if the trajectory passes
/// through the receiver (radial direction undefined).
DopplerTrace simulate_doppler(const Trajectory& traj, const Receiver& rx,
                              double carrier, bool apply_delay);

/// Adds i.i.d. Gaussian noise to the Doppler shift with
/// std = relative_std * max |f - carrier| over this trace.
DopplerTrace add_receiver_noise(const DopplerTrace& trace, const NoiseSpec& spec);

/// Same noise model with an absolute std in Hz.
DopplerTrace add_noise_absolute(const DopplerTrace& trace, double std_hz,
                                std::uint64_t seed);

/// PSNR in dB with MAX = carrier * reference_speed / c and MSE the mean
/// squared shift difference. Returns +infinity when MSE is zero.
double compute_psnr(const DopplerTrace& clean, const DopplerTrace& noisy,
                    double reference_speed);

/// Stacks the traces' shift series, each divided by its own population std,
/// into a d-dimensional point cloud (d = number of traces).
TimeOrderedPointCloud build_joint_topc(const std::vector<DopplerTrace>& traces);

/// Four receivers at the corners of an axis-aligned square of the given
/// side length centered on the origin, ids "rx0".."rx3".
std::vector<Receiver> corner_receivers(double side);

}  // namespace ssmx
