#include "ssmx/trajectory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ssmx {

namespace {

constexpr double kPi = std::numbers::pi;

// 0 before u0, 1 after u1, half-cosine in between.
double cosine_ramp(double u, double u0, double u1) {
  if (u <= u0) return 0.0;
  if (u >= u1) return 1.0;
  return 0.5 * (1.0 - std::cos(kPi * (u - u0) / (u1 - u0)));
}

double base_speed(MotionClass c, double u) {
  switch (c) {
    case MotionClass::Straight:
      return 20.0;
    case MotionClass::TakeExit:
      return 20.0 + (8.0 - 20.0) * cosine_ramp(u, 0.45, 0.75);
    case MotionClass::UTurn:
      if (u < 0.5) return 15.0 + (2.0 - 15.0) * cosine_ramp(u, 0.3, 0.5);
      return 2.0 + (15.0 - 2.0) * cosine_ramp(u, 0.5, 0.7);
  }
  throw std::invalid_argument("unknown motion class");
}

double base_heading(MotionClass c, double u) {
  switch (c) {
    case MotionClass::Straight:
      return 0.0;
    case MotionClass::TakeExit:
      return (kPi / 3.0) * cosine_ramp(u, 0.45, 0.75);
    case MotionClass::UTurn:
      return kPi * cosine_ramp(u, 0.35, 0.65);
  }
  throw std::invalid_argument("unknown motion class");
}

}  // namespace

const char* to_string(MotionClass c) {
  switch (c) {
    case MotionClass::Straight: return "Straight";
    case MotionClass::TakeExit: return "TakeExit";
    case MotionClass::UTurn: return "UTurn";
  }
  return "Unknown";
}

MotionClass motion_class_from_string(const std::string& name) {
  if (name == "Straight") return MotionClass::Straight;
  if (name == "TakeExit") return MotionClass::TakeExit;
  if (name == "UTurn") return MotionClass::UTurn;
  throw std::invalid_argument("unknown motion class: " + name);
}

Trajectory generate_trajectory(MotionClass motion_class, double duration,
                               double sample_rate, std::uint64_t seed) {
  if (!(duration > 0.0) || !(sample_rate > 0.0)) {
    throw std::invalid_argument("generate_trajectory needs duration > 0 and sample_rate > 0");
  }
  const auto n = static_cast<Index>(std::llround(duration * sample_rate));
  if (n < 2) {
    throw std::invalid_argument("duration * sample_rate must give at least 2 samples");
  }
  const double dt = 1.0 / sample_rate;

  // Two slow sinusoidal components modulate the speed by at most 0.5%.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp_dist(0.001, 0.0025);
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * kPi);
  std::uniform_int_distribution<int> freq_dist(1, 3);
  const double a1 = amp_dist(rng), p1 = phase_dist(rng);
  const double f1 = freq_dist(rng);
  const double a2 = amp_dist(rng), p2 = phase_dist(rng);
  const double f2 = freq_dist(rng);

  const auto speed_at = [&](double u) {
    const double mod = 1.0 + a1 * std::sin(2.0 * kPi * f1 * u + p1) +
                       a2 * std::sin(2.0 * kPi * f2 * u + p2);
    return base_speed(motion_class, u) * mod;
  };

  // Integrate velocity with fine trapezoidal substeps per sample interval.
  constexpr int kSubsteps = 32;
  Matrix positions(n, 2);
  positions.row(0).setZero();
  double x = 0.0, y = 0.0;
  const double total = duration;
  for (Index i = 1; i < n; ++i) {
    const double t0 = static_cast<double>(i - 1) * dt;
    const double h = dt / kSubsteps;
    for (int s = 0; s < kSubsteps; ++s) {
      const double ua = (t0 + s * h) / total;
      const double ub = (t0 + (s + 1) * h) / total;
      const double ha = base_heading(motion_class, ua);
      const double hb = base_heading(motion_class, ub);
      const double va = speed_at(ua);
      const double vb = speed_at(ub);
      x += 0.5 * h * (va * std::cos(ha) + vb * std::cos(hb));
      y += 0.5 * h * (va * std::sin(ha) + vb * std::sin(hb));
    }
    positions(i, 0) = x;
    positions(i, 1) = y;
  }
  positions.rowwise() -= positions.colwise().mean();

  Trajectory traj;
  traj.positions = std::move(positions);
  traj.timestamps = uniform_timestamps(n, dt);
  traj.motion_class = motion_class;
  return traj;
}

Trajectory apply_rigid_transform(const Trajectory& traj, const RigidTransform& xf) {
  Matrix pts = traj.positions;
  if (xf.reflect) {
    pts.col(1) = -pts.col(1);
  }
  const double c = std::cos(xf.rotation);
  const double s = std::sin(xf.rotation);
  Eigen::Matrix2d rot;
  rot << c, -s, s, c;
  pts = (pts * rot.transpose()).eval();
  pts.rowwise() += xf.translation.transpose();

  Trajectory out;
  out.positions = std::move(pts);
  out.timestamps = traj.timestamps;
  out.motion_class = traj.motion_class;
  return out;
}

TimeOrderedPointCloud speed_profile(const Trajectory& traj) {
  const Index n = traj.size();
  if (n < 2) {
    throw std::invalid_argument("speed_profile needs at least 2 samples");
  }
  Matrix speeds(n, 1);
  const auto& p = traj.positions;
  const auto& t = traj.timestamps;
  speeds(0, 0) = (p.row(1) - p.row(0)).norm() / (t[1] - t[0]);
  for (Index i = 1; i < n - 1; ++i) {
    speeds(i, 0) = (p.row(i + 1) - p.row(i - 1)).norm() / (t[i + 1] - t[i - 1]);
  }
  speeds(n - 1, 0) = (p.row(n - 1) - p.row(n - 2)).norm() / (t[n - 1] - t[n - 2]);

  return {std::move(speeds), traj.timestamps};
}

RigidTransform sample_rigid_transform(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> offset(-1000.0, 1000.0);
  std::uniform_int_distribution<int> coin(0, 1);
  RigidTransform xf;
  xf.rotation = angle(rng);
  xf.translation = Eigen::Vector2d(offset(rng), offset(rng));
  xf.reflect = coin(rng) == 1;
  return xf;
}

}  // namespace ssmx
