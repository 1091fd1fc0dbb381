#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "tfd/spectral.hpp"

namespace tfd {

enum class KernelKind { MargenauHill, KirkwoodRihaczek, BornJordan, Page, CustomGrid };

// Cohen kernel phi(theta, tau) on the doppler-lag plane. The fixed kinds are
//   margenau-hill       cos(theta tau / 2)
//   kirkwood-rihaczek   e^{i theta tau / 2}
//   born-jordan         sin(theta tau / 2) / (theta tau / 2), 1 at theta tau = 0
//   page                e^{i theta |tau|}
// CustomGrid holds samples on the wrap-around dual lattice of a TFD grid
// (doppler step 1/(N dt), lag step 2 dt, origin at index [0,0]).
struct KernelSpec {
  KernelKind kind = KernelKind::MargenauHill;
  Grid2D grid;  // only for CustomGrid

  static KernelSpec fixed(KernelKind k) {
    KernelSpec s;
    s.kind = k;
    return s;
  }
  static KernelSpec custom(Grid2D g) {
    if (g.role != GridRole::Kernel)
      throw Error(errc::axis_mismatch, "custom kernel grid must have role=kernel");
    KernelSpec s;
    s.kind = KernelKind::CustomGrid;
    s.grid = std::move(g);
    return s;
  }
};

inline const char* kernel_kind_name(KernelKind k) {
  switch (k) {
    case KernelKind::MargenauHill: return "margenau-hill";
    case KernelKind::KirkwoodRihaczek: return "kirkwood-rihaczek";
    case KernelKind::BornJordan: return "born-jordan";
    case KernelKind::Page: return "page";
    case KernelKind::CustomGrid: return "custom";
  }
  return "?";
}

inline KernelKind parse_kernel_kind(const std::string& s) {
  if (s == "margenau-hill") return KernelKind::MargenauHill;
  if (s == "kirkwood-rihaczek") return KernelKind::KirkwoodRihaczek;
  if (s == "born-jordan") return KernelKind::BornJordan;
  if (s == "page") return KernelKind::Page;
  throw Error(errc::invalid_config, "unknown kernel: " + s);
}

namespace detail {

inline cplx eval_fixed_kernel(KernelKind kind, double theta, double tau) {
  const double half = 0.5 * theta * tau;
  switch (kind) {
    case KernelKind::MargenauHill:
      return cplx{std::cos(half), 0.0};
    case KernelKind::KirkwoodRihaczek:
      return std::polar(1.0, half);
    case KernelKind::BornJordan:
      return cplx{half == 0.0 ? 1.0 : std::sin(half) / half, 0.0};
    case KernelKind::Page:
      return std::polar(1.0, theta * std::abs(tau));
    case KernelKind::CustomGrid:
      break;
  }
  throw Error(errc::invalid_config, "eval_fixed_kernel: not a fixed kernel");
}

}  // namespace detail

// Pointwise kernel value. CustomGrid kinds only answer on their own lattice.
inline cplx eval_kernel(const KernelSpec& spec, double theta, double tau) {
  if (!std::isfinite(theta) || !std::isfinite(tau))
    throw Error(errc::invalid_axis, "eval_kernel: inputs must be finite");
  if (spec.kind != KernelKind::CustomGrid) return detail::eval_fixed_kernel(spec.kind, theta, tau);
  const Grid2D& g = spec.grid;
  const double ra = theta / g.axis0.step;
  const double rb = tau / g.axis1.step;
  const double ia = std::round(ra);
  const double ib = std::round(rb);
  if (std::abs(ra - ia) > 1e-9 || std::abs(rb - ib) > 1e-9)
    throw Error(errc::invalid_axis, "custom kernel evaluated off its lattice");
  const long n = static_cast<long>(g.n_rows), k = static_cast<long>(g.n_cols);
  const long a = static_cast<long>(ia), b = static_cast<long>(ib);
  if (a < -(n / 2) || a >= n - n / 2 || b < -(k / 2) || b >= k - k / 2)
    throw Error(errc::invalid_axis, "custom kernel evaluated outside its lattice");
  return g.at(static_cast<std::size_t>((a % n + n) % n), static_cast<std::size_t>((b % k + k) % k));
}

namespace detail {

// phi sampled in wrap-around order on the dual lattice of `g`.
inline std::vector<cplx> sample_kernel_wrapped(const KernelSpec& spec, const TfdGeometry& g) {
  const std::size_t n = g.n, k = g.k;
  if (spec.kind == KernelKind::CustomGrid) {
    const Grid2D& cg = spec.grid;
    if (cg.n_rows != n || cg.n_cols != k)
      throw Error(errc::axis_mismatch, "custom kernel dims do not match the target's dual lattice");
    if (std::abs(cg.axis0.step - g.dtheta()) > 1e-9 * g.dtheta() ||
        std::abs(cg.axis1.step - g.dtau()) > 1e-9 * g.dtau())
      throw Error(errc::axis_mismatch, "custom kernel steps do not match the target's dual lattice");
    return cg.values;
  }
  std::vector<cplx> phi(n * k);
  for (std::size_t a = 0; a < n; ++a) {
    const double theta = g.theta_at(a);
    cplx* row = phi.data() + a * k;
    for (std::size_t b = 0; b < k; ++b) row[b] = eval_fixed_kernel(spec.kind, theta, g.tau_at(b));
  }
  return phi;
}

// phi with both lattice arguments reversed, sampled in wrap-around order.
// Multiplying D2[W] by this is the ambiguity-domain form of the Cohen
// smoothing (equal to convolving W with the transformed kernel).
inline std::vector<cplx> sample_kernel_reversed(const KernelSpec& spec, const TfdGeometry& g) {
  std::vector<cplx> phi = sample_kernel_wrapped(spec, g);
  const std::size_t n = g.n, k = g.k;
  std::vector<cplx> rev(n * k);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t ra = (n - a) % n;
    for (std::size_t b = 0; b < k; ++b) rev[a * k + b] = phi[ra * k + (k - b) % k];
  }
  return rev;
}

}  // namespace detail

// Pi = F[phi] sampled on the (x, w) lattice of the target TFD grid, stored in
// wrap-around order (origin at index [0,0]): the 2D DFT of phi on the dual
// lattice, normalized by dtheta * dtau so Pi approximates the continuous FT.
inline Grid2D kernel_transform(const KernelSpec& spec, const Grid2D& target) {
  const detail::TfdGeometry g = detail::geometry_of(target);
  std::vector<cplx> phi = detail::sample_kernel_wrapped(spec, g);
  detail::fft_2d(phi.data(), g.n, g.k, FFTW_FORWARD);
  detail::scale(phi, g.dtheta() * g.dtau());
  Grid2D out;
  out.role = GridRole::TFD;
  out.n_rows = g.n;
  out.n_cols = g.k;
  out.axis0 = Axis{0.0, g.dt, "s"};
  out.axis1 = Axis{0.0, g.dw(), "Hz"};
  out.values = std::move(phi);
  return out;
}

}  // namespace tfd
