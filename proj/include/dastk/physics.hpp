#pragma once

// Quasi-static DAS forward model. A surface point load deforms the elastic
// half space; the horizontal displacement at the buried fiber is
//
//   U_x(x) = F_z / (4 pi mu) * ( z x / r^3 - (1 - 2 nu) / (r + z) * (x / r) ),
//   r = sqrt(x^2 + y^2 + z^2),
//
// and the DAS strain is the gauge-length difference quotient
//
//   E_x(x) = [U(x + L/2) - U(x - L/2)] / L,   L = 0 -> dU/dx analytically.
//
// Vehicles are collections of point loads at axle positions; a vehicle moving
// along +x at speed c produces eps(x, t) = E_x(x - x_v(t)), so the spatial
// snapshot is speed-invariant while the temporal waveform scales with 1/c.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rng.hpp"
#include "types.hpp"
#include "util.hpp"

namespace dastk {

/// Horizontal half-space displacement at in-plane offset x, lateral offset y
/// from a vertical point load load_fz on the surface.
inline double point_displacement(double x, double y, const SiteModel& site, double load_fz) {
  const double z = site.fiber_depth_z;
  const double r2 = x * x + y * y + z * z;
  if (r2 == 0.0) throw std::domain_error("point_displacement: load coincides with sensor (r = 0)");
  const double r = std::sqrt(r2);
  const double term = z * x / (r2 * r) - (1.0 - 2.0 * site.poisson_nu) / (r + z) * (x / r);
  return load_fz / (4.0 * pi * site.shear_modulus_mu) * term;
}

/// Analytic d(U_x)/dx, the L = 0 point-sensor strain.
inline double point_strain_derivative(double x, double y, const SiteModel& site, double load_fz) {
  const double z = site.fiber_depth_z;
  const double r2 = x * x + y * y + z * z;
  if (r2 == 0.0) throw std::domain_error("point_strain_derivative: r = 0");
  const double r = std::sqrt(r2);
  const double r3 = r2 * r, r5 = r3 * r2;
  const double k = 1.0 - 2.0 * site.poisson_nu;
  const double rz = r + z;
  const double d1 = z / r3 - 3.0 * z * x * x / r5;
  const double d2 = 1.0 / (r * rz) - x * x / (r3 * rz) - x * x / (r2 * rz * rz);
  return load_fz / (4.0 * pi * site.shear_modulus_mu) * (d1 - k * d2);
}

/// Gauge-length strain at offset x from the load.
inline double gauge_strain(double x, double y, const SiteModel& site, double load_fz) {
  const double L = site.gauge_length_L;
  if (L == 0.0) return point_strain_derivative(x, y, site, load_fz);
  return (point_displacement(x + 0.5 * L, y, site, load_fz) -
          point_displacement(x - 0.5 * L, y, site, load_fz)) / L;
}

/// Strain at offset x from the vehicle reference point: superposition of the
/// per-axle gauge strains.
inline double vehicle_strain(double x, const VehicleSpec& vehicle, const SiteModel& site) {
  double e = 0.0;
  for (std::size_t a = 0; a < vehicle.axle_offsets.size(); ++a)
    e += gauge_strain(x - vehicle.axle_offsets[a], vehicle.lateral_offset_y, site,
                      vehicle.axle_loads[a]);
  return e;
}

/// Spatial wavelet of a (possibly multi-axle) vehicle sampled on the channel
/// grid, centered on the vehicle reference point. The truncated_support flag
/// is raised when |E| at the window edge still exceeds 1e-3 of the peak
/// (-60 dB). The result is unnormalized strain per the given loads.
inline SpatialKernel spatial_wavelet(const VehicleSpec& vehicle, const SiteModel& site,
                                     double half_width) {
  vehicle.validate();
  site.validate();
  if (!(half_width > 0.0)) throw std::invalid_argument("spatial_wavelet: half_width must be > 0");
  const double dx = site.channel_spacing_dx;
  const int half_n = static_cast<int>(std::floor(half_width / dx));
  SpatialKernel k;
  k.spacing = dx;
  k.center_index = half_n;
  k.samples.resize(2 * half_n + 1);
  k.provenance = KernelProvenance::simulated;
  for (int i = -half_n; i <= half_n; ++i)
    k.samples[i + half_n] = vehicle_strain(i * dx, vehicle, site);
  const double peak = max_abs(k.samples);
  const double edge = std::max(std::fabs(k.samples.front()), std::fabs(k.samples.back()));
  k.truncated_support = peak > 0.0 && edge > 1e-3 * peak;
  return k;
}

struct SimulateDiag {
  bool vehicle_off_fiber = false;
};

/// Strain field of one vehicle over n_time samples starting at t = 0.
inline StrainField simulate_vehicle(const VehicleSpec& vehicle, const SiteModel& site,
                                    int n_time, SimulateDiag* diag = nullptr) {
  vehicle.validate();
  site.validate();
  if (n_time < 1) throw std::invalid_argument("simulate_vehicle: n_time must be >= 1");
  StrainField f(site.n_channels, n_time, site.channel_spacing_dx, site.sample_interval_dt);
  const double extent = (site.n_channels - 1) * site.channel_spacing_dx;
  const double margin = 128.0; // default kernel support half-width
  bool entered = false;
  for (int it = 0; it < n_time; ++it) {
    const double xv = vehicle.position_at(it * site.sample_interval_dt);
    if (xv >= f.origin_channel - margin && xv <= f.origin_channel + extent + margin)
      entered = true;
    for (int ch = 0; ch < site.n_channels; ++ch)
      f.at(ch, it) = vehicle_strain(f.channel_pos(ch) - xv, vehicle, site);
  }
  if (!entered) {
    std::fill(f.data.begin(), f.data.end(), 0.0);
    if (diag) diag->vehicle_off_fiber = true;
  }
  return f;
}

/// AR(1)-colored (or white, ar_coeff = 0) Gaussian noise with stationary
/// standard deviation sigma, independent per channel.
inline void add_noise(StrainField& f, const NoiseSpec& noise, Rng& rng) {
  if (!noise.enabled()) return;
  const double a = noise.ar_coeff;
  if (!(a >= 0.0 && a < 1.0)) throw std::invalid_argument("add_noise: ar_coeff must be in [0, 1)");
  const double g = noise.sigma * std::sqrt(1.0 - a * a);
  for (int ch = 0; ch < f.n_channels; ++ch) {
    double prev = noise.sigma * rng.normal();
    f.at(ch, 0) += prev;
    for (int it = 1; it < f.n_time; ++it) {
      prev = a * prev + g * rng.normal();
      f.at(ch, it) += prev;
    }
  }
}

struct Scene {
  StrainField field;
  std::vector<Trajectory> ground_truth; // one per vehicle, reference point
};

/// Linear superposition of all vehicles plus seeded noise. Summation order is
/// vehicle index then axle index, so results do not depend on scheduling.
inline Scene simulate_scene(const std::vector<VehicleSpec>& vehicles, const SiteModel& site,
                            int n_time, const NoiseSpec& noise, std::uint64_t seed) {
  if (vehicles.empty() && !noise.enabled())
    throw std::invalid_argument("simulate_scene: need vehicles or noise");
  Scene scene;
  scene.field = StrainField(site.n_channels, n_time, site.channel_spacing_dx,
                            site.sample_interval_dt);
  for (const auto& v : vehicles) {
    StrainField one = simulate_vehicle(v, site, n_time);
    for (std::size_t i = 0; i < one.data.size(); ++i) scene.field.data[i] += one.data[i];
    Trajectory gt;
    gt.source = TrajectorySource::ground_truth;
    gt.time_indices.resize(n_time);
    gt.channel_positions.resize(n_time);
    gt.speeds.resize(n_time);
    for (int it = 0; it < n_time; ++it) {
      const double t = it * site.sample_interval_dt;
      gt.time_indices[it] = it;
      gt.channel_positions[it] = v.position_at(t);
      gt.speeds[it] = v.speed_at(t);
    }
    scene.ground_truth.push_back(std::move(gt));
  }
  Rng rng(derive_seed(seed, SeedStream::scene_noise));
  add_noise(scene.field, noise, rng);
  return scene;
}

} // namespace dastk
