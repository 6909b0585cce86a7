#pragma once

// Core value types exchanged between the simulation, deconvolution, and
// tracking stages. All quantities are SI (meters, seconds, Pa, N); strain is
// dimensionless.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dastk {

/// miles-per-hour to meters-per-second, exact by definition
inline constexpr double mph = 0.44704;

inline constexpr double pi = 3.14159265358979323846;

/// Fiber / soil / acquisition geometry. gauge_length_L = 0 selects the
/// analytic point-sensor limit.
struct SiteModel {
  double shear_modulus_mu = 20e6;  // Pa
  double poisson_nu = 0.4;
  double fiber_depth_z = 2.0;      // m, > 0
  double gauge_length_L = 16.0;    // m, >= 0
  double channel_spacing_dx = 1.0; // m, > 0
  int n_channels = 256;
  double sample_interval_dt = 0.02; // s, > 0

  void validate() const {
    if (!(poisson_nu > 0.0 && poisson_nu < 0.5))
      throw std::invalid_argument("SiteModel: poisson_nu must be in (0, 0.5)");
    if (!(fiber_depth_z > 0.0))
      throw std::invalid_argument("SiteModel: fiber_depth_z must be > 0");
    if (!(gauge_length_L >= 0.0))
      throw std::invalid_argument("SiteModel: gauge_length_L must be >= 0");
    if (!(channel_spacing_dx > 0.0))
      throw std::invalid_argument("SiteModel: channel_spacing_dx must be > 0");
    if (!(sample_interval_dt > 0.0))
      throw std::invalid_argument("SiteModel: sample_interval_dt must be > 0");
    if (n_channels < 1)
      throw std::invalid_argument("SiteModel: n_channels must be >= 1");
    if (!(shear_modulus_mu > 0.0))
      throw std::invalid_argument("SiteModel: shear_modulus_mu must be > 0");
  }
};

struct SpeedBreakpoint {
  double time_s = 0.0;
  double speed_ms = 0.0; // >= 0; positive speed moves toward +x
};

/// A multi-axle vehicle: point loads at axle_offsets relative to the
/// reference point, moving along +x with a piecewise-linear speed profile.
struct VehicleSpec {
  std::vector<double> axle_offsets; // m, strictly increasing
  std::vector<double> axle_loads;   // N, > 0, same length
  double lateral_offset_y = 15.0;   // m
  double start_position_x0 = 0.0;   // m, reference point position at t = 0
  std::vector<SpeedBreakpoint> speed_profile; // times strictly increasing

  void validate() const {
    if (axle_offsets.empty() || axle_offsets.size() != axle_loads.size())
      throw std::invalid_argument("VehicleSpec: need >= 1 axle with matching loads");
    for (std::size_t i = 1; i < axle_offsets.size(); ++i)
      if (!(axle_offsets[i] > axle_offsets[i - 1]))
        throw std::invalid_argument("VehicleSpec: axle_offsets must be strictly increasing");
    for (double f : axle_loads)
      if (!(f > 0.0))
        throw std::invalid_argument("VehicleSpec: axle_loads must be > 0");
    if (speed_profile.empty())
      throw std::invalid_argument("VehicleSpec: speed_profile must be non-empty");
    for (std::size_t i = 0; i < speed_profile.size(); ++i) {
      if (!(speed_profile[i].speed_ms >= 0.0))
        throw std::invalid_argument("VehicleSpec: speeds must be >= 0");
      if (i > 0 && !(speed_profile[i].time_s > speed_profile[i - 1].time_s))
        throw std::invalid_argument("VehicleSpec: speed_profile times must be strictly increasing");
    }
  }

  /// Speed at time t, clamped to the profile's end values.
  double speed_at(double t) const {
    const auto& p = speed_profile;
    if (t <= p.front().time_s) return p.front().speed_ms;
    if (t >= p.back().time_s) return p.back().speed_ms;
    for (std::size_t i = 1; i < p.size(); ++i) {
      if (t <= p[i].time_s) {
        const double a = (t - p[i - 1].time_s) / (p[i].time_s - p[i - 1].time_s);
        return p[i - 1].speed_ms + a * (p[i].speed_ms - p[i - 1].speed_ms);
      }
    }
    return p.back().speed_ms;
  }

  /// Integral of the clamp-extended speed profile over [a, b], a <= b.
  /// Piecewise-linear speed integrates in closed form (quadratic position per
  /// segment); no numerical quadrature.
  double integrate_speed(double a, double b) const {
    const auto& p = speed_profile;
    double total = 0.0;
    double lo = a;
    const double s0 = p.front().time_s, sn = p.back().time_s;
    if (lo < s0) {
      const double seg_hi = std::min(b, s0);
      total += p.front().speed_ms * (seg_hi - lo);
      lo = seg_hi;
    }
    for (std::size_t i = 1; i < p.size() && lo < b; ++i) {
      const double t0 = p[i - 1].time_s, t1 = p[i].time_s;
      const double s_lo = std::max(lo, t0), s_hi = std::min(b, t1);
      if (s_hi > s_lo) {
        const double dtseg = t1 - t0;
        const double a0 = (s_lo - t0) / dtseg, a1 = (s_hi - t0) / dtseg;
        const double v0 = p[i - 1].speed_ms, v1 = p[i].speed_ms;
        total += dtseg * (v0 * (a1 - a0) + 0.5 * (v1 - v0) * (a1 * a1 - a0 * a0));
        lo = s_hi;
      }
    }
    if (b > sn) total += p.back().speed_ms * (b - std::max(lo, sn));
    return total;
  }

  /// Reference-point position at time t: x0 + integral of the speed profile.
  double position_at(double t) const {
    if (t >= 0.0) return start_position_x0 + integrate_speed(0.0, t);
    return start_position_x0 - integrate_speed(t, 0.0);
  }
};

/// 2-D strain record, channel-major storage: data[ch * n_time + it].
struct StrainField {
  int n_channels = 0;
  int n_time = 0;
  double dx = 1.0;             // channel spacing, m
  double dt = 0.02;            // sample interval, s
  double origin_channel = 0.0; // position of channel 0, m
  double origin_time = 0.0;    // time of sample 0, s
  std::vector<double> data;

  StrainField() = default;
  StrainField(int nc, int nt, double dx_, double dt_)
      : n_channels(nc), n_time(nt), dx(dx_), dt(dt_),
        data(static_cast<std::size_t>(nc) * nt, 0.0) {}

  double& at(int ch, int it) { return data[static_cast<std::size_t>(ch) * n_time + it]; }
  double at(int ch, int it) const { return data[static_cast<std::size_t>(ch) * n_time + it]; }
  double channel_pos(int ch) const { return origin_channel + ch * dx; }
  double time_of(int it) const { return origin_time + it * dt; }
  std::size_t size() const { return data.size(); }

  bool finite() const {
    for (double v : data)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

/// The per-time-column sparse deconvolution result has the same layout as the
/// strain it explains; values may be signed (see fista).
using SparseModelField = StrainField;

enum class KernelProvenance { simulated, averaged };

/// 1-D spatial impulse response, odd length, extremum at center_index after
/// normalize_kernel. Peak magnitude 1 with the physical sign preserved.
struct SpatialKernel {
  std::vector<double> samples;
  double spacing = 1.0; // m
  int center_index = 0;
  KernelProvenance provenance = KernelProvenance::simulated;
  bool truncated_support = false; // set when the -60 dB support was clipped

  int length() const { return static_cast<int>(samples.size()); }
  double offset_of(int i) const { return (i - center_index) * spacing; }
};

enum class TrajectorySource { ground_truth, picked };

/// One vehicle's track: channel position (m) per time index, and optionally a
/// speed estimate per step.
struct Trajectory {
  std::vector<int> time_indices;        // monotone increasing
  std::vector<double> channel_positions; // m
  std::vector<double> speeds;            // m/s; empty until estimated
  TrajectorySource source = TrajectorySource::picked;

  std::size_t size() const { return time_indices.size(); }

  void validate() const {
    if (channel_positions.size() != time_indices.size())
      throw std::invalid_argument("Trajectory: positions/time length mismatch");
    if (!speeds.empty() && speeds.size() != time_indices.size())
      throw std::invalid_argument("Trajectory: speeds/time length mismatch");
    for (std::size_t i = 1; i < time_indices.size(); ++i)
      if (time_indices[i] <= time_indices[i - 1])
        throw std::invalid_argument("Trajectory: time_indices must increase");
  }
};

/// Additive noise: white Gaussian of std sigma, optionally AR(1)-colored
/// along time (coefficient ar_coeff in [0, 1)) with stationary std sigma.
struct NoiseSpec {
  double sigma = 0.0;
  double ar_coeff = 0.0;
  bool enabled() const { return sigma > 0.0; }
};

} // namespace dastk
