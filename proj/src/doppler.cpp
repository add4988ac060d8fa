#include "ssmx/doppler.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "ssmx/ssm.hpp"

namespace ssmx {

DopplerTrace simulate_doppler(const Trajectory& traj, const Receiver& rx,
                              double carrier, bool apply_delay) {
  if (!(carrier > 0.0)) {
    throw std::invalid_argument("simulate_doppler needs carrier > 0");
  }
  const Index n = traj.size();
  if (n < 2) {
    throw std::invalid_argument("simulate_doppler needs at least 2 samples");
  }

  Vector range(n);
  for (Index i = 0; i < n; ++i) {
    range[i] = (traj.positions.row(i).transpose() - rx.position).norm();
    if (range[i] < 1e-9) {
      throw std::runtime_error("trajectory passes through receiver " + rx.id +
                               ": radial direction undefined");
    }
  }

  const auto& t = traj.timestamps;
  Vector radial_speed(n);
  radial_speed[0] = (range[1] - range[0]) / (t[1] - t[0]);
  for (Index i = 1; i < n - 1; ++i) {
    radial_speed[i] = (range[i + 1] - range[i - 1]) / (t[i + 1] - t[i - 1]);
  }
  radial_speed[n - 1] = (range[n - 1] - range[n - 2]) / (t[n - 1] - t[n - 2]);

  Vector freq = (1.0 - radial_speed.array() / kSpeedOfLight) * carrier;

  if (apply_delay) {
    // Arrival stamps t + r/c are still strictly increasing (|rdot| << c),
    // so a plain linear resample back onto the transmit grid is enough.
    Vector arrival = t.array() + range.array() / kSpeedOfLight;
    Vector resampled(n);
    Index k = 0;
    for (Index i = 0; i < n; ++i) {
      const double ti = t[i];
      if (ti <= arrival[0]) {
        resampled[i] = freq[0];
        continue;
      }
      if (ti >= arrival[n - 1]) {
        resampled[i] = freq[n - 1];
        continue;
      }
      while (k + 1 < n && arrival[k + 1] < ti) ++k;
      const double w = (ti - arrival[k]) / (arrival[k + 1] - arrival[k]);
      resampled[i] = (1.0 - w) * freq[k] + w * freq[k + 1];
    }
    freq = std::move(resampled);
  }

  DopplerTrace trace;
  trace.times = t;
  trace.frequencies = std::move(freq);
  trace.receiver_id = rx.id;
  trace.carrier = carrier;
  return trace;
}

DopplerTrace add_receiver_noise(const DopplerTrace& trace, const NoiseSpec& spec) {
  if (spec.relative_std < 0.0) {
    throw std::invalid_argument("relative_std must be >= 0");
  }
  if (spec.relative_std == 0.0) {
    return trace;
  }
  const double max_shift = (trace.frequencies.array() - trace.carrier).abs().maxCoeff();
  if (max_shift <= 0.0) {
    throw std::runtime_error("no shift to scale noise against");
  }
  return add_noise_absolute(trace, spec.relative_std * max_shift, spec.seed);
}

DopplerTrace add_noise_absolute(const DopplerTrace& trace, double std_hz,
                                std::uint64_t seed) {
  if (std_hz < 0.0) {
    throw std::invalid_argument("noise std must be >= 0");
  }
  if (std_hz == 0.0) {
    return trace;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std_hz);
  DopplerTrace out = trace;
  for (Index i = 0; i < out.frequencies.size(); ++i) {
    out.frequencies[i] += gauss(rng);
  }
  return out;
}

double compute_psnr(const DopplerTrace& clean, const DopplerTrace& noisy,
                    double reference_speed) {
  if (clean.size() != noisy.size()) {
    throw std::invalid_argument("compute_psnr needs equal-length traces");
  }
  if (clean.carrier != noisy.carrier) {
    throw std::invalid_argument("compute_psnr needs traces with the same carrier");
  }
  const double max_shift = clean.carrier * reference_speed / kSpeedOfLight;
  const double mse = (noisy.frequencies - clean.frequencies).array().square().mean();
  if (mse <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return 10.0 * std::log10(max_shift * max_shift / mse);
}

TimeOrderedPointCloud build_joint_topc(const std::vector<DopplerTrace>& traces) {
  if (traces.empty()) {
    throw std::invalid_argument("build_joint_topc needs at least one trace");
  }
  const Index n = traces.front().size();
  Matrix points(n, static_cast<Index>(traces.size()));
  for (size_t d = 0; d < traces.size(); ++d) {
    const auto& tr = traces[d];
    if (tr.size() != n) {
      throw std::invalid_argument("build_joint_topc needs equal-length traces");
    }
    Vector shift = tr.frequencies.array() - tr.carrier;
    const double sd = population_std(shift);
    if (sd <= 0.0) {
      throw std::runtime_error("degenerate trace " + tr.receiver_id +
                               ": zero shift standard deviation");
    }
    points.col(static_cast<Index>(d)) = shift / sd;
  }
  return {std::move(points), traces.front().times};
}

std::vector<Receiver> corner_receivers(double side) {
  const double h = side / 2.0;
  return {
      {{-h, -h}, "rx0"},
      {{h, -h}, "rx1"},
      {{h, h}, "rx2"},
      {{-h, h}, "rx3"},
  };
}

}  // namespace ssmx
