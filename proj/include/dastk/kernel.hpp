#pragma once

// Spatial impulse-response estimation from recordings: detect isolated car
// passages, average their aligned snapshots, and (for spatially varying
// sites) build one kernel per fiber segment. Which picks count as "cars"
// rather than heavy vehicles is a guess the paper does not resolve; an
// optional peak-amplitude band filters them.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "types.hpp"
#include "util.hpp"

namespace dastk {

struct DetectionPick {
  int channel_index = 0;
  int time_index = 0;
  double peak_amplitude = 0.0;
};

struct DetectionConfig {
  double min_separation_m = 50.0;  // spatial isolation radius
  double min_separation_s = 2.0;   // stride between sampled time slices
  double threshold_ratio = 6.0;    // k in k * MAD
  double amplitude_lo = 0.0;       // optional pick amplitude band, 0/inf = off
  double amplitude_hi = 0.0;       // <= 0 disables the upper bound
};

/// Local maxima of |field| per sampled time slice, above threshold_ratio x
/// robust scale, keeping only maxima with no competing candidate within
/// min_separation_m (isolated cars). Time slices are sampled every
/// min_separation_s so successive picks of one car are separated in time.
inline std::vector<DetectionPick> detect_isolated_cars(const StrainField& field,
                                                       const DetectionConfig& cfg = {}) {
  if (field.n_channels == 0 || field.n_time == 0)
    throw std::invalid_argument("detect_isolated_cars: empty field");
  const double scale = mad_scale(field.data);
  const double threshold = cfg.threshold_ratio * scale;
  const int stride = std::max(1, static_cast<int>(std::llround(cfg.min_separation_s / field.dt)));
  const int sep_ch = std::max(1, static_cast<int>(std::llround(cfg.min_separation_m / field.dx)));
  std::vector<DetectionPick> picks;
  std::vector<int> cand;
  for (int it = 0; it < field.n_time; it += stride) {
    cand.clear();
    for (int ch = 1; ch + 1 < field.n_channels; ++ch) {
      const double a = std::fabs(field.at(ch, it));
      if (a <= threshold) continue;
      if (a > std::fabs(field.at(ch - 1, it)) && a >= std::fabs(field.at(ch + 1, it)))
        cand.push_back(ch);
    }
    for (int ch : cand) {
      bool isolated = true;
      for (int other : cand)
        if (other != ch && std::abs(other - ch) < sep_ch) { isolated = false; break; }
      if (!isolated) continue;
      const double amp = std::fabs(field.at(ch, it));
      if (amp < cfg.amplitude_lo) continue;
      if (cfg.amplitude_hi > 0.0 && amp > cfg.amplitude_hi) continue;
      picks.push_back({ch, it, field.at(ch, it)});
    }
  }
  return picks;
}

/// Scale so the global |extremum| has magnitude 1 (physical sign preserved),
/// and pad zeros so the extremum sits at the center of an odd-length kernel.
inline SpatialKernel normalize_kernel(const SpatialKernel& kernel) {
  if (kernel.samples.empty()) throw std::invalid_argument("normalize_kernel: empty kernel");
  const int ip = argmax_abs(kernel.samples);
  const double peak = std::fabs(kernel.samples[ip]);
  if (peak == 0.0) throw std::invalid_argument("normalize_kernel: all-zero kernel");
  const int n = kernel.length();
  const int radius = std::max(ip, n - 1 - ip);
  SpatialKernel out;
  out.spacing = kernel.spacing;
  out.provenance = kernel.provenance;
  out.truncated_support = kernel.truncated_support;
  out.center_index = radius;
  out.samples.assign(2 * radius + 1, 0.0);
  for (int i = 0; i < n; ++i) out.samples[i - ip + radius] = kernel.samples[i] / peak;
  return out;
}

/// Average the spatial snapshots around each pick, each normalized to unit
/// |peak| first (vehicle weights vary). Picks too close to the channel edges
/// are dropped; summation order is fixed by (time, channel) sort.
inline SpatialKernel estimate_kernel_average(const StrainField& field,
                                             std::vector<DetectionPick> picks,
                                             double half_width) {
  const int half_n = static_cast<int>(std::floor(half_width / field.dx));
  std::erase_if(picks, [&](const DetectionPick& p) {
    return p.channel_index < half_n || p.channel_index + half_n >= field.n_channels;
  });
  if (picks.empty())
    throw std::invalid_argument("estimate_kernel_average: no usable picks");
  std::sort(picks.begin(), picks.end(), [](const DetectionPick& a, const DetectionPick& b) {
    return a.time_index != b.time_index ? a.time_index < b.time_index
                                        : a.channel_index < b.channel_index;
  });
  const int n = 2 * half_n + 1;
  std::vector<double> acc(n, 0.0);
  for (const auto& p : picks) {
    double peak = 0.0;
    for (int i = -half_n; i <= half_n; ++i)
      peak = std::max(peak, std::fabs(field.at(p.channel_index + i, p.time_index)));
    if (peak == 0.0) continue;
    for (int i = -half_n; i <= half_n; ++i)
      acc[i + half_n] += field.at(p.channel_index + i, p.time_index) / peak;
  }
  SpatialKernel k;
  k.samples = std::move(acc);
  k.spacing = field.dx;
  k.center_index = half_n;
  k.provenance = KernelProvenance::averaged;
  return normalize_kernel(k);
}

struct KernelSegment {
  int channel_start = 0; // inclusive
  int channel_end = 0;   // exclusive
  SpatialKernel kernel;
};

struct SegmentKernelMap {
  std::vector<KernelSegment> segments; // sorted, non-overlapping, covering

  const SpatialKernel& kernel_for(int channel) const {
    for (const auto& s : segments)
      if (channel >= s.channel_start && channel < s.channel_end) return s.kernel;
    throw std::out_of_range("SegmentKernelMap: channel outside map");
  }

  void validate(int n_channels) const {
    if (segments.empty()) throw std::invalid_argument("SegmentKernelMap: empty");
    int expect = 0;
    for (const auto& s : segments) {
      if (s.channel_start != expect || s.channel_end <= s.channel_start)
        throw std::invalid_argument("SegmentKernelMap: segments must tile [0, n_channels)");
      expect = s.channel_end;
    }
    if (expect != n_channels)
      throw std::invalid_argument("SegmentKernelMap: segments must cover [0, n_channels)");
  }
};

/// Per-segment averaged kernels; segments with fewer than min_picks usable
/// picks inherit the fallback. The averaging half-width is the fallback's.
inline SegmentKernelMap build_segment_map(const StrainField& field, int segment_length,
                                          const std::vector<DetectionPick>& picks,
                                          const SpatialKernel& fallback, int min_picks = 3) {
  if (segment_length < 1)
    throw std::invalid_argument("build_segment_map: segment_length must be >= 1");
  const double half_width = fallback.center_index * fallback.spacing;
  if (segment_length < 2 * fallback.center_index)
    throw std::invalid_argument("build_segment_map: segment_length below 2 x kernel half-width");
  const int half_n = fallback.center_index;
  SegmentKernelMap map;
  for (int start = 0; start < field.n_channels; start += segment_length) {
    const int end = std::min(field.n_channels, start + segment_length);
    std::vector<DetectionPick> inside;
    for (const auto& p : picks)
      if (p.channel_index >= start && p.channel_index < end &&
          p.channel_index >= half_n && p.channel_index + half_n < field.n_channels)
        inside.push_back(p);
    KernelSegment seg;
    seg.channel_start = start;
    seg.channel_end = end;
    if (static_cast<int>(inside.size()) >= min_picks)
      seg.kernel = estimate_kernel_average(field, inside, half_width);
    else
      seg.kernel = fallback;
    map.segments.push_back(std::move(seg));
  }
  return map;
}

} // namespace dastk
