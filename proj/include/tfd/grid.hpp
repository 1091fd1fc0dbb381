#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "tfd/common.hpp"

namespace tfd {

// Uniformly sampled complex signal. Time axis is t_start + n / sample_rate_hz.
struct Signal {
  std::vector<cplx> samples;
  double sample_rate_hz = 1.0;
  double t_start = 0.0;

  std::size_t size() const { return samples.size(); }
  double dt() const { return 1.0 / sample_rate_hz; }
  double time_at(std::size_t n) const { return t_start + static_cast<double>(n) * dt(); }
};

inline void validate_signal(const Signal& f) {
  if (!(f.sample_rate_hz > 0.0))
    throw Error(errc::invalid_signal, "signal sample rate must be positive");
  if (f.samples.size() < 2)
    throw Error(errc::invalid_signal, "signal must have at least 2 samples");
}

inline double signal_energy(const Signal& f) {  // sum |f|^2 (no dt weight)
  double e = 0.0;
  for (const cplx& v : f.samples) e += std::norm(v);
  return e;
}

// ||f||_2^2 with Riemann weight, i.e. dt * sum |f|^2.
inline double signal_l2sq(const Signal& f) { return signal_energy(f) * f.dt(); }

enum class GridRole : std::uint8_t {
  TFD = 0,          // axes: (time s, frequency Hz)
  Spectrum = 1,     // 2D-DFT dual of a TFD grid: (doppler Hz, lag s)
  Kernel = 2,       // ambiguity plane: (doppler Hz, lag s)
  Correlation = 3,  // lag offsets
};

inline const char* grid_role_name(GridRole r) {
  switch (r) {
    case GridRole::TFD: return "tfd";
    case GridRole::Spectrum: return "spectrum";
    case GridRole::Kernel: return "kernel";
    case GridRole::Correlation: return "correlation";
  }
  return "?";
}

struct Axis {
  double origin = 0.0;
  double step = 1.0;
  std::string unit;
};

inline bool axis_equal(const Axis& a, const Axis& b) {
  const double tol = 1e-12 * (std::abs(a.step) + std::abs(b.step));
  return std::abs(a.step - b.step) <= tol &&
         std::abs(a.origin - b.origin) <= 1e-9 * (1.0 + std::abs(a.origin) + std::abs(b.origin));
}

// Row-major complex matrix with typed axes. Treated as immutable after
// construction; every operation returns a fresh grid.
struct Grid2D {
  std::vector<cplx> values;  // n_rows * n_cols, row-major
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  Axis axis0;  // rows
  Axis axis1;  // columns
  GridRole role = GridRole::TFD;

  cplx& at(std::size_t r, std::size_t c) { return values[r * n_cols + c]; }
  const cplx& at(std::size_t r, std::size_t c) const { return values[r * n_cols + c]; }

  double axis0_at(std::size_t r) const { return axis0.origin + static_cast<double>(r) * axis0.step; }
  double axis1_at(std::size_t c) const { return axis1.origin + static_cast<double>(c) * axis1.step; }

  double cell_area() const { return axis0.step * axis1.step; }
};

inline Grid2D grid_alloc(std::size_t n_rows, std::size_t n_cols, const Axis& axis0,
                         const Axis& axis1, GridRole role) {
  if (n_rows < 2 || n_cols < 2)
    throw Error(errc::invalid_dims, "grid dimensions must be at least 2x2");
  if (!(axis0.step > 0.0) || !(axis1.step > 0.0))
    throw Error(errc::invalid_axis, "axis steps must be positive");
  Grid2D g;
  g.values.assign(n_rows * n_cols, cplx{0.0, 0.0});
  g.n_rows = n_rows;
  g.n_cols = n_cols;
  g.axis0 = axis0;
  g.axis1 = axis1;
  g.role = role;
  return g;
}

inline void require_same_layout(const Grid2D& a, const Grid2D& b) {
  if (a.n_rows != b.n_rows || a.n_cols != b.n_cols)
    throw Error(errc::axis_mismatch, "grid dimensions differ");
  if (!axis_equal(a.axis0, b.axis0) || !axis_equal(a.axis1, b.axis1))
    throw Error(errc::axis_mismatch, "grid axes differ");
  if (a.role != b.role)
    throw Error(errc::axis_mismatch, "grid roles differ");
}

inline Grid2D grid_sub(const Grid2D& a, const Grid2D& b) {
  require_same_layout(a, b);
  Grid2D out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

// Riemann-weighted L2 norm: sqrt(sum |v|^2 * step0 * step1).
inline double grid_l2(const Grid2D& a) {
  double s = 0.0;
  for (const cplx& v : a.values) s += std::norm(v);
  return std::sqrt(s * a.cell_area());
}

}  // namespace tfd
