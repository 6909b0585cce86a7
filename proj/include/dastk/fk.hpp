#pragma once

// Frequency-wavenumber diagnostics. A constant-speed vehicle concentrates its
// spectral mass on the line f = -c k (cycles/s vs cycles/m with this DFT sign
// convention), and the wavenumber content is speed-invariant. Both properties
// are what the acceptance suite checks.

#include <fftw3.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "types.hpp"
#include "util.hpp"

namespace dastk {

/// |2-D DFT| of a Hann-tapered field, stored in DFT bin order
/// (row = wavenumber bin over channels, col = frequency bin over time).
struct FkSpectrum {
  int n_k = 0;
  int n_f = 0;
  double dk = 0.0; // cycles per meter per bin
  double df = 0.0; // Hz per bin
  std::vector<double> mag; // n_k * n_f, row-major

  double at(int ik, int it) const { return mag[static_cast<std::size_t>(ik) * n_f + it]; }
  int signed_bin_k(int ik) const { return ik <= n_k / 2 ? ik : ik - n_k; }
  int signed_bin_f(int it) const { return it <= n_f / 2 ? it : it - n_f; }
  double wavenumber(int ik) const { return signed_bin_k(ik) * dk; }
  double frequency(int it) const { return signed_bin_f(it) * df; }
};

/// Hann taper per axis, then full complex 2-D DFT (FFTW), magnitude out.
inline FkSpectrum fk_spectrum(const StrainField& field) {
  if (field.n_channels < 8 || field.n_time < 8)
    throw std::invalid_argument("fk_spectrum: field must be at least 8 x 8");
  const int nx = field.n_channels, nt = field.n_time;
  const auto wx = hann_window(nx);
  const auto wt = hann_window(nt);

  std::vector<fftw_complex> in(static_cast<std::size_t>(nx) * nt);
  std::vector<fftw_complex> out(static_cast<std::size_t>(nx) * nt);
  for (int ch = 0; ch < nx; ++ch)
    for (int it = 0; it < nt; ++it) {
      const std::size_t idx = static_cast<std::size_t>(ch) * nt + it;
      in[idx][0] = field.at(ch, it) * wx[ch] * wt[it];
      in[idx][1] = 0.0;
    }
  fftw_plan plan = fftw_plan_dft_2d(nx, nt, in.data(), out.data(), FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  FkSpectrum s;
  s.n_k = nx;
  s.n_f = nt;
  s.dk = 1.0 / (nx * field.dx);
  s.df = 1.0 / (nt * field.dt);
  s.mag.resize(in.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    s.mag[i] = std::hypot(out[i][0], out[i][1]);
  return s;
}

/// Fraction of total spectral energy lying within +-tol_bins frequency bins
/// of the line f = -c k.
inline double line_energy_fraction(const FkSpectrum& s, double speed, int tol_bins = 2) {
  double total = 0.0, hit = 0.0;
  for (int ik = 0; ik < s.n_k; ++ik) {
    const double f_expect_bins = -speed * s.wavenumber(ik) / s.df;
    for (int it = 0; it < s.n_f; ++it) {
      const double p = s.at(ik, it) * s.at(ik, it);
      total += p;
      if (std::fabs(s.signed_bin_f(it) - f_expect_bins) <= tol_bins) hit += p;
    }
  }
  return total > 0.0 ? hit / total : 0.0;
}

/// Energy summed over frequency per wavenumber bin (speed-invariant shape).
inline std::vector<double> wavenumber_marginal(const FkSpectrum& s) {
  std::vector<double> m(s.n_k, 0.0);
  for (int ik = 0; ik < s.n_k; ++ik)
    for (int it = 0; it < s.n_f; ++it)
      m[ik] += s.at(ik, it) * s.at(ik, it);
  return m;
}

} // namespace dastk
