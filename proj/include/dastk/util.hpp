#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dastk {

inline double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median: empty input");
  const std::size_t m = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + m, v.end());
  double hi = v[m];
  if (v.size() % 2 == 1) return hi;
  std::nth_element(v.begin(), v.begin() + m - 1, v.end());
  return 0.5 * (v[m - 1] + hi);
}

/// Robust scale: 1.4826 * median(|x - median(x)|), consistent with the
/// standard deviation for Gaussian data.
inline double mad_scale(std::span<const double> v) {
  std::vector<double> tmp(v.begin(), v.end());
  const double med = median(tmp);
  for (double& x : tmp) x = std::fabs(x - med);
  return 1.4826 * median(std::move(tmp));
}

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

/// Index of the global |extremum|; first occurrence wins on ties.
inline int argmax_abs(std::span<const double> v) {
  int best = 0;
  double bv = -1.0;
  for (int i = 0; i < static_cast<int>(v.size()); ++i) {
    const double a = std::fabs(v[i]);
    if (a > bv) { bv = a; best = i; }
  }
  return best;
}

/// Full width at half maximum of |profile| around its extremum (or around
/// peak_index if given), with linear interpolation of the half crossings.
/// A single-sample spike bordered by zeros yields one grid step.
inline double fwhm(std::span<const double> profile, double spacing, int peak_index = -1) {
  const int n = static_cast<int>(profile.size());
  if (n == 0) throw std::invalid_argument("fwhm: empty profile");
  int ip = peak_index >= 0 ? peak_index : argmax_abs(profile);
  // move to the local |maximum| nearest the requested index
  auto a = [&](int i) { return std::fabs(profile[i]); };
  while (ip + 1 < n && a(ip + 1) > a(ip)) ++ip;
  while (ip - 1 >= 0 && a(ip - 1) > a(ip)) --ip;
  const double half = a(ip) / 2.0;
  if (half <= 0.0) return 0.0;
  double left = ip, right = ip;
  {
    int i = ip;
    while (i > 0 && a(i) > half) --i;
    if (a(i) > half) left = i; // hit the edge still above half
    else left = i + (half - a(i)) / (a(i + 1) - a(i));
  }
  {
    int i = ip;
    while (i < n - 1 && a(i) > half) ++i;
    if (a(i) > half) right = i;
    else right = (i - 1) + (a(i - 1) - half) / (a(i - 1) - a(i));
  }
  return (right - left) * spacing;
}

inline std::vector<double> hann_window(int n) {
  std::vector<double> w(n);
  if (n == 1) { w[0] = 1.0; return w; }
  for (int i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * 3.14159265358979323846 * i / (n - 1));
  return w;
}

inline double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("pearson_correlation: size mismatch");
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) { ma += a[i]; mb += b[i]; }
  ma /= n; mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db; saa += da * da; sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) throw std::invalid_argument("pearson_correlation: zero variance");
  return sab / std::sqrt(saa * sbb);
}

/// FNV-1a 64-bit; used for manifest content hashes (not cryptographic).
inline std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex_u64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) { s[i] = digits[v & 0xf]; v >>= 4; }
  return s;
}

/// Median filter with shrinking windows at the edges.
inline std::vector<double> median_filter(const std::vector<double>& v, int width) {
  if (width < 1 || width % 2 == 0) throw std::invalid_argument("median_filter: width must be odd >= 1");
  const int n = static_cast<int>(v.size());
  const int half = width / 2;
  std::vector<double> out(n);
  std::vector<double> buf;
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - half), hi = std::min(n - 1, i + half);
    buf.assign(v.begin() + lo, v.begin() + hi + 1);
    out[i] = median(std::move(buf));
  }
  return out;
}

} // namespace dastk
