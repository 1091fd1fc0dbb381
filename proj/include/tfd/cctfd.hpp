#pragma once

#include <vector>

#include "tfd/kernels.hpp"
#include "tfd/wvd.hpp"

namespace tfd {

// Cohen's-class distribution as the Riemann-weighted circular 2D convolution
// of the WVD with F[phi], realized as a pointwise product in the 2D DFT
// domain (where the product collapses to multiplication by the reversed
// kernel samples).
inline Grid2D cctfd_convolution(const Signal& f, const KernelSpec& spec) {
  const detail::TfdGeometry g = detail::geometry_for(f);
  std::vector<cplx> spectrum = detail::spectrum_from_lag(detail::lag_wrapped(f, g), g);
  const std::vector<cplx> phi_rev = detail::sample_kernel_reversed(spec, g);
  for (std::size_t i = 0; i < spectrum.size(); ++i) spectrum[i] *= phi_rev[i];
  Grid2D out;
  out.role = GridRole::TFD;
  out.n_rows = g.n;
  out.n_cols = g.k;
  detail::make_tfd_axes(g, out.axis0, out.axis1);
  out.values = detail::dft2_inverse(std::move(spectrum), g.n, g.k);
  return out;
}

inline constexpr std::size_t kIntegralFormLimit = 128;

// Direct discretization of the integral form on the same lattice: the
// ambiguity sum over the observation window followed by the weighted double
// sum over the dual lattice, evaluated in physical coordinates. O(N^2 K^2)
// work; guarded as an oracle for small N.
inline Grid2D cctfd_integral(const Signal& f, const KernelSpec& spec) {
  validate_signal(f);
  if (f.samples.size() > kIntegralFormLimit)
    throw Error(errc::size_limit, "cctfd_integral is limited to N <= 128 samples");
  const detail::TfdGeometry g = detail::geometry_for(f);
  const std::size_t n = g.n, k = g.k;

  // A[a,b] = dt * sum_n f(n + m_b) conj(f(n - m_b)) e^{+2 pi i y_n theta_a}
  std::vector<cplx> amb(n * k, cplx{0.0, 0.0});
  for (std::size_t a = 0; a < n; ++a) {
    const double theta = g.theta_at(a);
    for (std::size_t b = 0; b < k; ++b) {
      const long m = g.signed_col(b);
      cplx acc{0.0, 0.0};
      for (long nn = 0; nn < static_cast<long>(n); ++nn) {
        const long ip = nn + m, iq = nn - m;
        if (ip < 0 || iq < 0 || ip >= static_cast<long>(n) || iq >= static_cast<long>(n)) continue;
        const double y = g.t0 + static_cast<double>(nn) * g.dt;
        acc += f.samples[static_cast<std::size_t>(ip)] *
               std::conj(f.samples[static_cast<std::size_t>(iq)]) *
               std::polar(1.0, kTwoPi * y * theta);
      }
      amb[a * k + b] = g.dt * acc;
    }
  }

  // Weight by the kernel.
  for (std::size_t a = 0; a < n; ++a) {
    const double theta = g.theta_at(a);
    for (std::size_t b = 0; b < k; ++b)
      amb[a * k + b] *= eval_kernel(spec, theta, g.tau_at(b));
  }

  // C[r,c] = dtheta dtau sum_{a,b} amb[a,b] e^{-2 pi i (theta_a x_r + tau_b w_c)},
  // evaluated as two nested direct sums via precomputed phase tables.
  std::vector<cplx> px(n * n);  // e^{-2 pi i theta_a x_r}
  for (std::size_t a = 0; a < n; ++a) {
    const double theta = g.theta_at(a);
    for (std::size_t r = 0; r < n; ++r)
      px[a * n + r] = std::polar(1.0, -kTwoPi * theta * (g.t0 + static_cast<double>(r) * g.dt));
  }
  std::vector<cplx> pw(k * k);  // e^{-2 pi i tau_b w_c}
  for (std::size_t b = 0; b < k; ++b) {
    const double tau = g.tau_at(b);
    for (std::size_t c = 0; c < k; ++c)
      pw[b * k + c] = std::polar(1.0, -kTwoPi * tau * (g.w_origin() + static_cast<double>(c) * g.dw()));
  }
  std::vector<cplx> half(n * k, cplx{0.0, 0.0});  // sum over b first
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      const cplx v = amb[a * k + b];
      if (v == cplx{0.0, 0.0}) continue;
      const cplx* prow = pw.data() + b * k;
      cplx* hrow = half.data() + a * k;
      for (std::size_t c = 0; c < k; ++c) hrow[c] += v * prow[c];
    }
  }
  Grid2D out;
  out.role = GridRole::TFD;
  out.n_rows = n;
  out.n_cols = k;
  detail::make_tfd_axes(g, out.axis0, out.axis1);
  out.values.assign(n * k, cplx{0.0, 0.0});
  const double wgt = g.dtheta() * g.dtau();
  for (std::size_t r = 0; r < n; ++r) {
    cplx* crow = out.values.data() + r * k;
    for (std::size_t a = 0; a < n; ++a) {
      const cplx p = px[a * n + r];
      const cplx* hrow = half.data() + a * k;
      for (std::size_t c = 0; c < k; ++c) crow[c] += p * hrow[c];
    }
    for (std::size_t c = 0; c < k; ++c) crow[c] *= wgt;
  }
  return out;
}

// Fixed-kernel denoising: smooth the noisy WVD with the chosen kernel, then
// rank-1 reconstruct (the Hermitian part of the implied matrix handles the
// complex-valued distributions).
inline Signal denoise_via_kernel(const Signal& g, const KernelSpec& spec, const Signal& phase_ref,
                                 Warnings* warnings = nullptr) {
  const Grid2D c = cctfd_convolution(g, spec);
  Reconstruction r = reconstruct(c, &phase_ref);
  r.warnings.merge_into(warnings);
  return std::move(r.signal);
}

}  // namespace tfd
