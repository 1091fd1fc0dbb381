#pragma once

#include <algorithm>
#include <cblas.h>
#include <cmath>
#include <cstddef>
#include <vector>

#include "tfd/spectral.hpp"

namespace tfd {

namespace detail {

// Rank-1 signal extraction from wrapped lag rows. The Hermitian part of the
// implied matrix K[p,q] ~ f(p) conj(f(q)) is assembled on the even sublattice
// p+q (the only one the even-lag WVD determines); odd entries are filled by
// averaging the two even neighbors along the lag-grid diagonal (endpoints
// copy the single available neighbor). The leading eigenpair then gives
// f_hat = sqrt(lambda1) * v.
struct Rank1Result {
  Signal signal;
  Warnings warnings;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

inline cplx hemv_dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double vec_norm(const std::vector<cplx>& a) {
  double s = 0.0;
  for (const cplx& v : a) s += std::norm(v);
  return std::sqrt(s);
}

// y = A x for Hermitian A stored row-major with valid upper triangle.
inline void hemv(const std::vector<cplx>& a, std::size_t n, const std::vector<cplx>& x,
                 std::vector<cplx>& y) {
  const cplx alpha{1.0, 0.0}, beta{0.0, 0.0};
  cblas_zhemv(CblasRowMajor, CblasUpper, static_cast<int>(n), &alpha, a.data(),
              static_cast<int>(n), x.data(), 1, &beta, y.data(), 1);
}

inline Rank1Result rank1_from_lag(const std::vector<cplx>& lagw, const TfdGeometry& g,
                                  const Signal* phase_ref) {
  const std::size_t n = g.n, k = g.k;
  Rank1Result out;
  out.signal.sample_rate_hz = 1.0 / g.dt;
  out.signal.t_start = g.t0;
  out.signal.samples.assign(n, cplx{0.0, 0.0});

  // Hermitian part over non-negative lags: h[n,m] = (r[n,m] + conj(r[n,-m])) / 2.
  std::vector<cplx> h(n * n);
  for (std::size_t row = 0; row < n; ++row) {
    const cplx* src = lagw.data() + row * k;
    cplx* dst = h.data() + row * n;
    for (std::size_t m = 0; m < n; ++m)
      dst[m] = 0.5 * (src[m % k] + std::conj(src[(k - m % k) % k]));
  }

  // Upper triangle of K: even p+q entries are exact. Odd entries interpolate
  // the missing factor from even sites along the same lag diagonal: 4-point
  // (-1/16, 9/16, 9/16, -1/16) in the interior, 2-point average near the
  // boundary, single-neighbor copy at the edge.
  std::vector<cplx> K(n * n, cplx{0.0, 0.0});
  for (std::size_t p = 0; p < n; ++p) {
    cplx* row = K.data() + p * n;
    for (std::size_t q = p; q < n; q += 2) {
      const std::size_t mid = (p + q) / 2;
      const std::size_t m = (q - p) / 2;
      row[q] = std::conj(h[mid * n + m]);
    }
  }
  const auto even_site = [&](std::size_t p, std::size_t q) -> cplx {
    return q >= p ? K[p * n + q] : std::conj(K[q * n + p]);
  };
  for (std::size_t p = 0; p < n; ++p) {
    cplx* row = K.data() + p * n;
    for (std::size_t q = p + 1; q < n; q += 2) {
      if (q >= 3 && q + 3 < n) {
        row[q] = (9.0 / 16.0) * (even_site(p, q - 1) + even_site(p, q + 1)) -
                 (1.0 / 16.0) * (even_site(p, q - 3) + even_site(p, q + 3));
      } else if (q + 1 < n) {
        row[q] = 0.5 * (even_site(p, q - 1) + even_site(p, q + 1));
      } else {
        row[q] = even_site(p, q - 1);
      }
    }
  }

  // Deterministic start vector: the column through the largest diagonal entry
  // (for an exact rank-1 matrix that column is already proportional to f).
  std::size_t p0 = 0;
  double best = -1.0;
  for (std::size_t p = 0; p < n; ++p) {
    const double d = K[p * n + p].real();
    if (d > best) {
      best = d;
      p0 = p;
    }
  }
  std::vector<cplx> v(n), y(n);
  for (std::size_t p = 0; p < n; ++p)
    v[p] = p <= p0 ? K[p * n + p0] : std::conj(K[p0 * n + p]);
  double vn = vec_norm(v);
  if (vn == 0.0) {
    v.assign(n, cplx{1.0 / std::sqrt(static_cast<double>(n)), 0.0});
    vn = 1.0;
  } else {
    for (cplx& x : v) x /= vn;
  }

  // Power iteration; converges on the relative Rayleigh-quotient change.
  const double tol = 1e-10;
  const int max_iter = 500;
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    hemv(K, n, v, y);
    const double next = hemv_dot(v, y).real();
    const double yn = vec_norm(y);
    if (yn == 0.0) {
      lambda = 0.0;
      break;
    }
    for (std::size_t p = 0; p < n; ++p) v[p] = y[p] / yn;
    const bool settled = std::abs(next - lambda) <= tol * std::max(std::abs(next), 1e-30);
    lambda = next;
    if (settled) break;
  }
  out.lambda1 = lambda;

  if (!(lambda > 0.0)) {
    out.warnings.non_psd = true;
    return out;  // zero signal
  }

  // Coarse second eigenvalue by deflated iteration; only the ratio against
  // lambda1/2 matters, so a handful of iterations suffice.
  {
    std::vector<cplx> w(n), z(n);
    for (std::size_t p = 0; p < n; ++p)
      w[p] = p <= p0 ? K[p * n + p0] : std::conj(K[p0 * n + p]);
    cplx proj = hemv_dot(v, w);
    for (std::size_t p = 0; p < n; ++p) w[p] -= proj * v[p];
    double wn = vec_norm(w);
    if (wn > 1e-14 * std::abs(lambda)) {
      for (cplx& x : w) x /= wn;
      double l2 = 0.0;
      for (int it = 0; it < 40; ++it) {
        hemv(K, n, w, z);
        const cplx c1 = hemv_dot(v, z);
        for (std::size_t p = 0; p < n; ++p) z[p] -= c1 * v[p];
        const double prev = l2;
        l2 = hemv_dot(w, z).real();
        const double zn = vec_norm(z);
        if (zn == 0.0) {
          l2 = 0.0;
          break;
        }
        for (std::size_t p = 0; p < n; ++p) w[p] = z[p] / zn;
        if (it > 4 && std::abs(l2 - prev) <= 1e-3 * std::max(std::abs(l2), 1e-30)) break;
      }
      out.lambda2 = l2;
      if (std::abs(l2) > 0.5 * lambda) out.warnings.not_rank_one = true;
    }
  }

  const double amp = std::sqrt(lambda);
  for (std::size_t p = 0; p < n; ++p) out.signal.samples[p] = amp * v[p];

  if (phase_ref) {
    if (phase_ref->samples.size() != n)
      throw Error(errc::axis_mismatch, "phase reference length differs from grid rows");
    cplx inner{0.0, 0.0};
    for (std::size_t p = 0; p < n; ++p)
      inner += phase_ref->samples[p] * std::conj(out.signal.samples[p]);
    if (std::abs(inner) > 0.0) {
      const cplx rot = inner / std::abs(inner);
      for (cplx& x : out.signal.samples) x *= rot;
    }
  } else {
    std::size_t pmax = 0;
    double amax = -1.0;
    for (std::size_t p = 0; p < n; ++p) {
      const double a = std::abs(out.signal.samples[p]);
      if (a > amax) {
        amax = a;
        pmax = p;
      }
    }
    if (amax > 0.0) {
      const cplx ref = out.signal.samples[pmax];
      const cplx rot = std::conj(ref) / std::abs(ref);
      for (cplx& x : out.signal.samples) x *= rot;
    }
  }
  return out;
}

}  // namespace detail

// Instantaneous autocorrelation grid: N x (2N-1) with centered lag columns,
// entry [n, M+m] = f(t_n + m dt) * conj(f(t_n - m dt)), zero outside the
// observation window.
inline Grid2D instantaneous_autocorrelation(const Signal& f) {
  const detail::TfdGeometry g = detail::geometry_for(f);
  const std::vector<cplx> lagw = detail::lag_wrapped(f, g);
  const std::size_t n = g.n, k = g.k, m0 = g.k / 2;
  Grid2D out;
  out.role = GridRole::Correlation;
  out.n_rows = n;
  out.n_cols = k;
  out.axis0 = Axis{f.t_start, f.dt(), "s"};
  out.axis1 = Axis{-static_cast<double>(m0) * g.dtau(), g.dtau(), "s"};
  out.values.resize(n * k);
  for (std::size_t row = 0; row < n; ++row) {
    const cplx* src = lagw.data() + row * k;
    cplx* dst = out.values.data() + row * k;
    for (std::size_t c = 0; c < k; ++c) dst[c] = src[(c + k - m0) % k];
  }
  return out;
}

// Discrete Wigner-Ville distribution on even lags:
//   W[n, j] = 2 dt sum_m f[n+m] conj(f[n-m]) e^{-2 pi i m j / K},
// j signed over K = pad*(2N-1) bins, frequency axis step fs/(2K) spanning
// [-fs/4, fs/4). Sets warnings->aliasing when more than 1% of the signal's
// spectral energy lies above fs/4.
inline Grid2D wvd(const Signal& f, Warnings* warnings = nullptr, std::size_t pad_factor = 1) {
  const detail::TfdGeometry g = detail::geometry_for(f, pad_factor);
  if (warnings) {
    std::vector<cplx> spec = f.samples;
    detail::fft_1d(spec.data(), spec.size(), FFTW_FORWARD);
    double total = 0.0, high = 0.0;
    const std::size_t n = spec.size();
    for (std::size_t j = 0; j < n; ++j) {
      const long sj = j < (n + 1) / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(n);
      const double nu = std::abs(static_cast<double>(sj)) * f.sample_rate_hz / static_cast<double>(n);
      const double e = std::norm(spec[j]);
      total += e;
      if (nu > 0.25 * f.sample_rate_hz) high += e;
    }
    if (total > 0.0 && high > 0.01 * total) warnings->aliasing = true;
  }
  return detail::grid_from_lag(detail::lag_wrapped(f, g), g);
}

// Total squared mass of a TFD grid with Riemann weights; equals ||f||_2^4
// for a true WVD (Moyal/Parseval relation).
inline double wvd_energy(const Grid2D& w) {
  if (w.role != GridRole::TFD) throw Error(errc::axis_mismatch, "wvd_energy expects a TFD grid");
  double s = 0.0;
  for (const cplx& v : w.values) s += std::norm(v);
  return s * w.cell_area();
}

struct Reconstruction {
  Signal signal;
  Warnings warnings;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

// Recover a signal from a (possibly filtered, hence not exactly valid) WVD
// grid as the least-squares rank-1 fit of the implied outer-product matrix.
// With phase_ref the global phase maximizes Re<f_hat, phase_ref>; otherwise
// the max-magnitude sample is rotated to zero phase.
inline Reconstruction reconstruct(const Grid2D& w_hat, const Signal* phase_ref = nullptr) {
  const detail::TfdGeometry g = detail::geometry_of(w_hat);
  if (g.k < 2 * g.n - 1)
    throw Error(errc::invalid_dims, "reconstruct needs K >= 2N-1 frequency bins");
  const std::vector<cplx> lagw = detail::lag_from_grid(w_hat, g);
  detail::Rank1Result r = detail::rank1_from_lag(lagw, g, phase_ref);
  return Reconstruction{std::move(r.signal), r.warnings, r.lambda1, r.lambda2};
}

inline Reconstruction reconstruct(const Grid2D& w_hat, const Signal& phase_ref) {
  return reconstruct(w_hat, &phase_ref);
}

}  // namespace tfd
