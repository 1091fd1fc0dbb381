#pragma once

#include <cstddef>
#include <vector>

#include "tfd/fft.hpp"
#include "tfd/grid.hpp"

namespace tfd::detail {

// Discretization frame shared by every quadratic time-frequency operation.
//
// Time rows: t_n = t0 + n*dt, n in [0, N). Lags are even multiples of dt
// (tau = 2m*dt) so f(x +- tau/2) lands on the sample grid; the frequency
// axis then spans [-fs/4, fs/4) with step dw = fs/(2K) over K bins
// (K = 2N-1 unless zero-padded). Spectra of TFD grids live on the dual
// lattice: doppler step 1/(N*dt), lag step 2*dt, stored in wrap-around
// order with the origin at index [0,0].
struct TfdGeometry {
  std::size_t n = 0;
  std::size_t k = 0;
  double dt = 1.0;
  double t0 = 0.0;

  double fs() const { return 1.0 / dt; }
  double dw() const { return 1.0 / (2.0 * static_cast<double>(k) * dt); }
  double dtheta() const { return 1.0 / (static_cast<double>(n) * dt); }
  double dtau() const { return 2.0 * dt; }
  std::size_t col_shift() const { return k / 2; }  // number of negative-frequency bins
  double w_origin() const { return -static_cast<double>(col_shift()) * dw(); }

  long signed_row(std::size_t a) const {
    return a < (n + 1) / 2 ? static_cast<long>(a) : static_cast<long>(a) - static_cast<long>(n);
  }
  long signed_col(std::size_t b) const {
    return b < (k + 1) / 2 ? static_cast<long>(b) : static_cast<long>(b) - static_cast<long>(k);
  }
  double theta_at(std::size_t a) const { return static_cast<double>(signed_row(a)) * dtheta(); }
  double tau_at(std::size_t b) const { return static_cast<double>(signed_col(b)) * dtau(); }
};

inline TfdGeometry geometry_for(const Signal& f, std::size_t pad_factor = 1) {
  validate_signal(f);
  if (pad_factor < 1) throw Error(errc::invalid_dims, "pad factor must be >= 1");
  TfdGeometry g;
  g.n = f.samples.size();
  g.k = pad_factor * (2 * g.n - 1);
  g.dt = f.dt();
  g.t0 = f.t_start;
  return g;
}

inline TfdGeometry geometry_of(const Grid2D& w) {
  if (w.role != GridRole::TFD) throw Error(errc::axis_mismatch, "expected a TFD grid");
  TfdGeometry g;
  g.n = w.n_rows;
  g.k = w.n_cols;
  g.dt = w.axis0.step;
  g.t0 = w.axis0.origin;
  if (std::abs(w.axis1.step - g.dw()) > 1e-9 * g.dw())
    throw Error(errc::axis_mismatch, "TFD grid frequency step does not match fs/(2K)");
  return g;
}

inline void make_tfd_axes(const TfdGeometry& g, Axis& axis0, Axis& axis1) {
  axis0 = Axis{g.t0, g.dt, "s"};
  axis1 = Axis{g.w_origin(), g.dw(), "Hz"};
}

inline Axis spectrum_axis0(const TfdGeometry& g) { return Axis{0.0, g.dtheta(), "Hz"}; }
inline Axis spectrum_axis1(const TfdGeometry& g) { return Axis{0.0, g.dtau(), "s"}; }

// Instantaneous autocorrelation r[n, m] = f[n+m] * conj(f[n-m]) with lag
// index m stored wrap-around in [0, K); out-of-window products are zero.
inline std::vector<cplx> lag_wrapped(const Signal& f, const TfdGeometry& g) {
  const std::size_t n = g.n, k = g.k;
  std::vector<cplx> lag(n * k, cplx{0.0, 0.0});
  const long max_m = static_cast<long>(n) - 1;
  for (std::size_t row = 0; row < n; ++row) {
    const long nn = static_cast<long>(row);
    for (long m = -max_m; m <= max_m; ++m) {
      const long ip = nn + m;
      const long iq = nn - m;
      if (ip < 0 || iq < 0 || ip >= static_cast<long>(n) || iq >= static_cast<long>(n)) continue;
      const std::size_t mw = static_cast<std::size_t>((m % static_cast<long>(k) + static_cast<long>(k)) % static_cast<long>(k));
      lag[row * k + mw] = f.samples[static_cast<std::size_t>(ip)] * std::conj(f.samples[static_cast<std::size_t>(iq)]);
    }
  }
  return lag;
}

// Materialize the W grid from wrapped lag rows:
// W[n, c] = 2*dt * sum_m r[n,m] e^{-2 pi i m (c - shift) / K}.
inline Grid2D grid_from_lag(const std::vector<cplx>& lagw, const TfdGeometry& g) {
  std::vector<cplx> work = lagw;
  fft_rows(work.data(), g.n, g.k, FFTW_FORWARD);
  Grid2D w;
  w.role = GridRole::TFD;
  w.n_rows = g.n;
  w.n_cols = g.k;
  make_tfd_axes(g, w.axis0, w.axis1);
  w.values.resize(g.n * g.k);
  const double s = 2.0 * g.dt;
  const std::size_t shift = g.col_shift();
  for (std::size_t row = 0; row < g.n; ++row) {
    const cplx* src = work.data() + row * g.k;
    cplx* dst = w.values.data() + row * g.k;
    for (std::size_t c = 0; c < g.k; ++c) {
      dst[c] = s * src[(c + g.k - shift) % g.k];
    }
  }
  return w;
}

// Inverse of grid_from_lag.
inline std::vector<cplx> lag_from_grid(const Grid2D& w, const TfdGeometry& g) {
  std::vector<cplx> work(g.n * g.k);
  const std::size_t shift = g.col_shift();
  for (std::size_t row = 0; row < g.n; ++row) {
    const cplx* src = w.values.data() + row * g.k;
    cplx* dst = work.data() + row * g.k;
    for (std::size_t j = 0; j < g.k; ++j) dst[j] = src[(j + shift) % g.k];
  }
  fft_rows(work.data(), g.n, g.k, FFTW_BACKWARD);
  scale(work, 1.0 / (2.0 * g.dt * static_cast<double>(g.k)));
  return work;
}

// Unnormalized 2D index-space DFT of the W grid, computed directly from the
// lag representation with N-length FFTs only:
//   D2[W][a, b] = 2 dt K e^{-2 pi i shift b / K} * sum_n r[n, -b] e^{-2 pi i n a / N}.
inline std::vector<cplx> spectrum_from_lag(const std::vector<cplx>& lagw, const TfdGeometry& g) {
  const std::size_t n = g.n, k = g.k;
  std::vector<cplx> spec(n * k);
  for (std::size_t row = 0; row < n; ++row) {
    const cplx* src = lagw.data() + row * k;
    cplx* dst = spec.data() + row * k;
    for (std::size_t b = 0; b < k; ++b) dst[b] = src[(k - b) % k];
  }
  fft_cols(spec.data(), n, k, FFTW_FORWARD);
  const double s = 2.0 * g.dt * static_cast<double>(k);
  const double shift = static_cast<double>(g.col_shift());
  for (std::size_t b = 0; b < k; ++b) {
    const cplx ph = s * std::polar(1.0, -kTwoPi * shift * static_cast<double>(b) / static_cast<double>(k));
    for (std::size_t a = 0; a < n; ++a) spec[a * k + b] *= ph;
  }
  return spec;
}

// Inverse of spectrum_from_lag.
inline std::vector<cplx> lag_from_spectrum(std::vector<cplx> spec, const TfdGeometry& g) {
  const std::size_t n = g.n, k = g.k;
  const double s = 1.0 / (2.0 * g.dt * static_cast<double>(k) * static_cast<double>(n));
  const double shift = static_cast<double>(g.col_shift());
  fft_cols(spec.data(), n, k, FFTW_BACKWARD);
  for (std::size_t b = 0; b < k; ++b) {
    const cplx ph = s * std::polar(1.0, kTwoPi * shift * static_cast<double>(b) / static_cast<double>(k));
    for (std::size_t a = 0; a < n; ++a) spec[a * k + b] *= ph;
  }
  std::vector<cplx> lag(n * k);
  for (std::size_t row = 0; row < n; ++row) {
    const cplx* src = spec.data() + row * k;
    cplx* dst = lag.data() + row * k;
    for (std::size_t mw = 0; mw < k; ++mw) dst[mw] = src[(k - mw) % k];
  }
  return lag;
}

// Full 2D DFT of an arbitrary grid's values (index space, unnormalized).
inline std::vector<cplx> dft2_forward(const Grid2D& g) {
  std::vector<cplx> out = g.values;
  fft_2d(out.data(), g.n_rows, g.n_cols, FFTW_FORWARD);
  return out;
}

inline std::vector<cplx> dft2_inverse(std::vector<cplx> spec, std::size_t n_rows, std::size_t n_cols) {
  fft_2d(spec.data(), n_rows, n_cols, FFTW_BACKWARD);
  scale(spec, 1.0 / (static_cast<double>(n_rows) * static_cast<double>(n_cols)));
  return spec;
}

}  // namespace tfd::detail
