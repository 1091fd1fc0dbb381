#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "tfd/cctfd.hpp"
#include "tfd/wvd.hpp"

namespace tfd {

// Least-squares adaptive filter transfer function in the WVD domain, with the
// relative regularization delta * max(psd of W_g) in the denominator.
struct FilterDesign {
  Grid2D transfer;  // role=Spectrum, wrap-around dual lattice of the source grid
  double delta = 0.0;
  std::size_t source_rows = 0;
  std::size_t source_cols = 0;
};

namespace detail {

inline void require_tfd_pair(const Grid2D& a, const Grid2D& b) {
  if (a.role != GridRole::TFD || b.role != GridRole::TFD)
    throw Error(errc::axis_mismatch, "expected TFD grids");
  require_same_layout(a, b);
}

inline Grid2D make_spectrum_grid(const Grid2D& source, std::vector<cplx> values) {
  Grid2D out;
  out.role = GridRole::Spectrum;
  out.n_rows = source.n_rows;
  out.n_cols = source.n_cols;
  out.axis0 = Axis{0.0, 1.0 / (static_cast<double>(source.n_rows) * source.axis0.step), "Hz"};
  out.axis1 = Axis{0.0, 1.0 / (static_cast<double>(source.n_cols) * source.axis1.step), "s"};
  out.values = std::move(values);
  return out;
}

// Core transfer computation on raw 2D DFTs; the Riemann factor on the PSDs
// cancels in the ratio, so it is applied only where a PSD is exposed.
inline std::vector<cplx> transfer_from_dfts(const std::vector<cplx>& df, const std::vector<cplx>& dg,
                                            double delta) {
  if (delta < 0.0) throw Error(errc::invalid_config, "regularization delta must be >= 0");
  double max_eps = 0.0;
  for (const cplx& v : dg) max_eps = std::max(max_eps, std::norm(v));
  if (max_eps <= 0.0)
    throw Error(errc::degenerate_input, "design_lsaf: PSD of W_g is identically zero");
  const double reg = delta * max_eps;
  std::vector<cplx> t(df.size());
  for (std::size_t i = 0; i < df.size(); ++i) {
    const double denom = std::norm(dg[i]) + reg;
    t[i] = denom > 0.0 ? df[i] * std::conj(dg[i]) / denom : cplx{0.0, 0.0};
  }
  return t;
}

}  // namespace detail

// epsilon_{A,B}(u) = F[A](u) * conj(F[B](u)) with Riemann-weighted 2D DFTs.
inline Grid2D cross_psd(const Grid2D& a, const Grid2D& b) {
  detail::require_tfd_pair(a, b);
  std::vector<cplx> da = detail::dft2_forward(a);
  const std::vector<cplx> db = detail::dft2_forward(b);
  const double s = a.cell_area() * b.cell_area();
  for (std::size_t i = 0; i < da.size(); ++i) da[i] = s * da[i] * std::conj(db[i]);
  return detail::make_spectrum_grid(a, std::move(da));
}

// transfer(u) = eps_{W_f,W_g}(u) / (eps_{W_g}(u) + delta * max_u eps_{W_g});
// with delta = 0 the bins where eps_{W_g} vanishes get transfer 0.
inline FilterDesign design_lsaf(const Grid2D& w_f, const Grid2D& w_g, double delta) {
  detail::require_tfd_pair(w_f, w_g);
  const std::vector<cplx> df = detail::dft2_forward(w_f);
  const std::vector<cplx> dg = detail::dft2_forward(w_g);
  FilterDesign design;
  design.delta = delta;
  design.source_rows = w_f.n_rows;
  design.source_cols = w_f.n_cols;
  design.transfer = detail::make_spectrum_grid(w_f, detail::transfer_from_dfts(df, dg, delta));
  return design;
}

// W_fhat = inverse 2D DFT of (F[W_g] * transfer): the circular-convolution
// realization of the WVD-domain filter.
inline Grid2D apply_filter(const Grid2D& w_g, const FilterDesign& design) {
  if (w_g.role != GridRole::TFD) throw Error(errc::axis_mismatch, "apply_filter expects a TFD grid");
  if (w_g.n_rows != design.source_rows || w_g.n_cols != design.source_cols)
    throw Error(errc::axis_mismatch, "apply_filter: grid dims do not match the design");
  std::vector<cplx> spec = detail::dft2_forward(w_g);
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= design.transfer.values[i];
  Grid2D out = w_g;
  out.values = detail::dft2_inverse(std::move(spec), w_g.n_rows, w_g.n_cols);
  return out;
}

// H_opt = inverse 2D DFT of the transfer function, on the (x, w) offset
// lattice of the source grid.
inline Grid2D lsaf_impulse_response(const FilterDesign& design) {
  const Grid2D& t = design.transfer;
  const double dx = 1.0 / (static_cast<double>(t.n_rows) * t.axis0.step);
  const double dw = 1.0 / (static_cast<double>(t.n_cols) * t.axis1.step);
  Grid2D out;
  out.role = GridRole::TFD;
  out.n_rows = t.n_rows;
  out.n_cols = t.n_cols;
  out.axis0 = Axis{0.0, dx, "s"};
  out.axis1 = Axis{0.0, dw, "Hz"};
  out.values = detail::dft2_inverse(t.values, t.n_rows, t.n_cols);
  detail::scale(out.values, 1.0 / (dx * dw));
  return out;
}

// phi_opt(theta, tau) = transfer(-theta, -tau) via modular index reversal
// (index 0 maps to itself).
inline Grid2D optimal_kernel(const FilterDesign& design) {
  const Grid2D& t = design.transfer;
  Grid2D out;
  out.role = GridRole::Kernel;
  out.n_rows = t.n_rows;
  out.n_cols = t.n_cols;
  out.axis0 = t.axis0;
  out.axis1 = t.axis1;
  out.values.resize(t.values.size());
  for (std::size_t a = 0; a < t.n_rows; ++a) {
    const std::size_t ra = (t.n_rows - a) % t.n_rows;
    for (std::size_t b = 0; b < t.n_cols; ++b)
      out.values[a * t.n_cols + b] = t.values[ra * t.n_cols + (t.n_cols - b) % t.n_cols];
  }
  return out;
}

// C_g^{LSAF}: the adaptive CCTFD of g designed against the clean reference.
inline Grid2D adaptive_cctfd(const Signal& f_ref, const Signal& g, double delta) {
  validate_signal(f_ref);
  validate_signal(g);
  if (f_ref.samples.size() != g.samples.size() ||
      std::abs(f_ref.sample_rate_hz - g.sample_rate_hz) > 1e-9 * g.sample_rate_hz)
    throw Error(errc::axis_mismatch, "adaptive_cctfd: signals must share length and rate");
  const Grid2D w_f = wvd(f_ref);
  const Grid2D w_g = wvd(g);
  return apply_filter(w_g, design_lsaf(w_f, w_g, delta));
}

// Minimum MSE via the spectral identity:
//   ||f||^4 - sum_u eps_{fg} eps_{gf} / eps_g du,
// with ||f||^4 taken as wvd_energy(W_f) and the design's regularized
// denominator.
inline double min_mse(const Grid2D& w_f, const Grid2D& w_g, const FilterDesign& design) {
  detail::require_tfd_pair(w_f, w_g);
  const std::vector<cplx> df = detail::dft2_forward(w_f);
  const std::vector<cplx> dg = detail::dft2_forward(w_g);
  const double s = w_f.cell_area() * w_g.cell_area();  // Riemann factor on each PSD
  double max_eps = 0.0;
  for (const cplx& v : dg) max_eps = std::max(max_eps, s * std::norm(v));
  const double reg = design.delta * max_eps;
  const double du = 1.0 / (static_cast<double>(w_f.n_rows) * w_f.axis0.step) /
                    (static_cast<double>(w_f.n_cols) * w_f.axis1.step);
  double acc = 0.0;
  for (std::size_t i = 0; i < df.size(); ++i) {
    const double eps_g = s * std::norm(dg[i]);
    const double denom = eps_g + reg;
    if (denom <= 0.0) continue;
    const double cross = s * std::norm(df[i] * std::conj(dg[i]));  // eps_fg * eps_gf = |eps_fg|^2
    acc += s * cross / denom;
  }
  return wvd_energy(w_f) - acc * du;
}

// L2 norm over the lag lattice of R_{W_f,W_g} - (R_{W_g} * H_opt), evaluated
// spectrally: || eps_fg - eps_g * transfer || with dual-lattice Riemann
// weights (Parseval makes the two readings equal).
inline double wiener_hopf_residual(const Grid2D& w_f, const Grid2D& w_g,
                                   const FilterDesign& design) {
  detail::require_tfd_pair(w_f, w_g);
  if (w_f.n_rows != design.source_rows || w_f.n_cols != design.source_cols)
    throw Error(errc::axis_mismatch, "wiener_hopf_residual: design does not match grids");
  const std::vector<cplx> df = detail::dft2_forward(w_f);
  const std::vector<cplx> dg = detail::dft2_forward(w_g);
  const double s = w_f.cell_area() * w_g.cell_area();
  const double du = 1.0 / (static_cast<double>(w_f.n_rows) * w_f.axis0.step) /
                    (static_cast<double>(w_f.n_cols) * w_f.axis1.step);
  double acc = 0.0;
  for (std::size_t i = 0; i < df.size(); ++i) {
    const cplx eps_fg = s * df[i] * std::conj(dg[i]);
    const cplx eps_g{s * std::norm(dg[i]), 0.0};
    acc += std::norm(eps_fg - eps_g * design.transfer.values[i]);
  }
  return std::sqrt(acc * du);
}

// Full adaptive pipeline: filter in the WVD domain, then rank-1 inversion
// phase-locked to the reference.
inline Signal denoise_lsaf(const Signal& f_ref, const Signal& g, double delta,
                           Warnings* warnings = nullptr) {
  const Grid2D c = adaptive_cctfd(f_ref, g, delta);
  Reconstruction r = reconstruct(c, &f_ref);
  r.warnings.merge_into(warnings);
  return std::move(r.signal);
}

// Ordinary 1D Wiener baseline in the signal spectrum: transfer
// S_f / (S_f + S_n + delta * max(S_f + S_n)) with the oracle noise spectrum
// S_n = |F[g] - F[f_ref]|^2, applied to F[g].
inline Signal wiener_1d(const Signal& f_ref, const Signal& g, double delta) {
  validate_signal(f_ref);
  validate_signal(g);
  if (f_ref.samples.size() != g.samples.size() ||
      std::abs(f_ref.sample_rate_hz - g.sample_rate_hz) > 1e-9 * g.sample_rate_hz)
    throw Error(errc::axis_mismatch, "wiener_1d: signals must share length and rate");
  if (delta < 0.0) throw Error(errc::invalid_config, "regularization delta must be >= 0");
  const std::size_t n = g.samples.size();
  std::vector<cplx> ff = f_ref.samples;
  std::vector<cplx> fg = g.samples;
  detail::fft_1d(ff.data(), n, FFTW_FORWARD);
  detail::fft_1d(fg.data(), n, FFTW_FORWARD);
  double max_d = 0.0;
  std::vector<double> denom(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sf = std::norm(ff[i]);
    const double sn = std::norm(fg[i] - ff[i]);
    denom[i] = sf + sn;
    max_d = std::max(max_d, denom[i]);
  }
  const double reg = delta * max_d;
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = denom[i] + reg;
    const double t = d > 0.0 ? std::norm(ff[i]) / d : 0.0;
    out[i] = t * fg[i];
  }
  detail::fft_1d(out.data(), n, FFTW_BACKWARD);
  detail::scale(out, 1.0 / static_cast<double>(n));
  Signal fhat = g;
  fhat.samples = std::move(out);
  return fhat;
}

}  // namespace tfd
