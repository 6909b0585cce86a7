#pragma once

// Sparse spatial deconvolution baseline: per time column q, solve
//
//   min_x  1/2 ||k * x - y_q||_2^2 + rho ||x||_1
//
// with FISTA (accelerated proximal gradient, fixed step 1/L from a power-
// iteration Lipschitz bound). Columns are independent; the output is signed
// unless the non-negative variant is requested.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "types.hpp"
#include "util.hpp"

namespace dastk {

/// Linear convolution along the channel axis, cropped to the input length
/// ("same" mode centered on kernel.center_index), zero-padded boundaries.
inline void spatial_convolve_column(std::span<const double> x, const SpatialKernel& kernel,
                                    std::span<double> out) {
  const int n = static_cast<int>(x.size());
  const int m = kernel.length();
  if (m >= n) throw std::invalid_argument("spatial_convolve: kernel must be shorter than channel axis");
  const int c = kernel.center_index;
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    const int j_lo = std::max(0, i + c - (n - 1));
    const int j_hi = std::min(m - 1, i + c);
    for (int j = j_lo; j <= j_hi; ++j) acc += kernel.samples[j] * x[i + c - j];
    out[i] = acc;
  }
}

/// Adjoint of spatial_convolve_column (correlation with the kernel).
inline void spatial_correlate_column(std::span<const double> y, const SpatialKernel& kernel,
                                     std::span<double> out) {
  const int n = static_cast<int>(y.size());
  const int m = kernel.length();
  if (m >= n) throw std::invalid_argument("spatial_correlate: kernel must be shorter than channel axis");
  const int c = kernel.center_index;
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    const int j_lo = std::max(0, c - i);
    const int j_hi = std::min(m - 1, n - 1 - i + c);
    for (int j = j_lo; j <= j_hi; ++j) acc += kernel.samples[j] * y[i - c + j];
    out[i] = acc;
  }
}

/// Convolution of every time column of a field (channel axis).
inline StrainField spatial_convolve(const StrainField& f, const SpatialKernel& kernel) {
  StrainField out = f;
  std::vector<double> col(f.n_channels), res(f.n_channels);
  for (int it = 0; it < f.n_time; ++it) {
    for (int ch = 0; ch < f.n_channels; ++ch) col[ch] = f.at(ch, it);
    spatial_convolve_column(col, kernel, res);
    for (int ch = 0; ch < f.n_channels; ++ch) out.at(ch, it) = res[ch];
  }
  return out;
}

/// Largest eigenvalue of K^T K for the "same"-mode convolution operator on
/// n_channels-long columns, by power iteration on conv-then-correlate.
inline double lipschitz_estimate(const SpatialKernel& kernel, int n_channels,
                                 double rel_tol = 1e-8, int max_iters = 10000) {
  if (kernel.length() >= n_channels)
    throw std::invalid_argument("lipschitz_estimate: kernel must be shorter than channel axis");
  std::vector<double> v(n_channels), kx(n_channels), ktkx(n_channels);
  // deterministic, not orthogonal to anything in particular
  for (int i = 0; i < n_channels; ++i) v[i] = 1.0 + 0.01 * ((i * 2654435761u) % 97);
  double lambda = 0.0;
  for (int iter = 0; iter < max_iters; ++iter) {
    spatial_convolve_column(v, kernel, kx);
    spatial_correlate_column(kx, kernel, ktkx);
    double norm = 0.0;
    for (double t : ktkx) norm += t * t;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    double lambda_new = 0.0;
    for (int i = 0; i < n_channels; ++i) lambda_new += v[i] * ktkx[i];
    double vnorm = 0.0;
    for (double t : v) vnorm += t * t;
    lambda_new /= vnorm;
    for (int i = 0; i < n_channels; ++i) v[i] = ktkx[i] / norm;
    if (iter > 0 && std::fabs(lambda_new - lambda) <= rel_tol * std::fabs(lambda_new))
      return lambda_new;
    lambda = lambda_new;
  }
  throw std::runtime_error("lipschitz_estimate: power iteration did not converge");
}

inline double soft_threshold(double v, double lambda) {
  if (v > lambda) return v - lambda;
  if (v < -lambda) return v + lambda;
  return 0.0;
}

inline void soft_threshold(std::span<double> v, double lambda) {
  for (double& x : v) x = soft_threshold(x, lambda);
}

struct FistaConfig {
  double rho = -1.0;       // absolute L1 weight; < 0 selects rho_scale mode
  double rho_scale = 0.05; // rho = rho_scale * max|K^T y| per column
  int max_iters = 200;
  double tolerance = 1e-8; // relative objective change stop
  bool nonnegative = false;

  void validate() const {
    if (max_iters < 1) throw std::invalid_argument("FistaConfig: max_iters >= 1");
    if (!(tolerance > 0.0)) throw std::invalid_argument("FistaConfig: tolerance > 0");
  }
};

struct FistaColumnStats {
  int iterations = 0;
  double objective = 0.0; // best objective seen
};

namespace detail {

inline double fista_objective(std::span<const double> x, std::span<const double> y,
                              const SpatialKernel& kernel, double rho,
                              std::span<double> scratch) {
  spatial_convolve_column(x, kernel, scratch);
  double data = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = scratch[i] - y[i];
    data += r * r;
    l1 += std::fabs(x[i]);
  }
  return 0.5 * data + rho * l1;
}

} // namespace detail

/// One column solve; returns the best-objective iterate.
inline FistaColumnStats fista_column(std::span<const double> y, const SpatialKernel& kernel,
                                     const FistaConfig& cfg, double lipschitz,
                                     std::span<double> x_out) {
  const int n = static_cast<int>(y.size());
  std::vector<double> x(n, 0.0), x_prev(n, 0.0), zb(n, 0.0), grad(n), kz(n), scratch(n);
  std::vector<double> kty(n);
  spatial_correlate_column(y, kernel, kty);
  double rho = cfg.rho;
  if (rho < 0.0) rho = cfg.rho_scale * max_abs(kty);
  const double step = 1.0 / lipschitz;
  double t_k = 1.0;
  double best_obj = detail::fista_objective(x, y, kernel, rho, scratch);
  std::copy(x.begin(), x.end(), x_out.begin());
  double prev_obj = best_obj;
  FistaColumnStats stats;
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    // gradient step at the auxiliary point zb, then shrink
    spatial_convolve_column(zb, kernel, kz);
    for (int i = 0; i < n; ++i) kz[i] -= y[i];
    spatial_correlate_column(kz, kernel, grad);
    x_prev.swap(x);
    for (int i = 0; i < n; ++i)
      x[i] = soft_threshold(zb[i] - step * grad[i], rho * step);
    if (cfg.nonnegative)
      for (double& v : x) v = std::max(0.0, v);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_k * t_k));
    const double mom = (t_k - 1.0) / t_next;
    for (int i = 0; i < n; ++i) zb[i] = x[i] + mom * (x[i] - x_prev[i]);
    t_k = t_next;
    const double obj = detail::fista_objective(x, y, kernel, rho, scratch);
    if (obj < best_obj) {
      best_obj = obj;
      std::copy(x.begin(), x.end(), x_out.begin());
    }
    stats.iterations = iter;
    if (iter >= 2 && std::fabs(prev_obj - obj) <= cfg.tolerance * std::max(1e-300, std::fabs(prev_obj)))
      break;
    prev_obj = obj;
  }
  stats.objective = best_obj;
  return stats;
}

/// Per-column FISTA over the whole field.
inline SparseModelField fista_deconvolve(const StrainField& field, const SpatialKernel& kernel,
                                         const FistaConfig& cfg) {
  cfg.validate();
  if (!field.finite()) throw std::invalid_argument("fista_deconvolve: field must be finite");
  const double lip = lipschitz_estimate(kernel, field.n_channels);
  SparseModelField out = field;
  std::vector<double> y(field.n_channels), x(field.n_channels);
  for (int it = 0; it < field.n_time; ++it) {
    for (int ch = 0; ch < field.n_channels; ++ch) y[ch] = field.at(ch, it);
    fista_column(y, kernel, cfg, lip, x);
    for (int ch = 0; ch < field.n_channels; ++ch) out.at(ch, it) = x[ch];
  }
  return out;
}

} // namespace dastk
