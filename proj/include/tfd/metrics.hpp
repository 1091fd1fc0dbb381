#pragma once

#include <cmath>
#include <limits>

#include "tfd/grid.hpp"

namespace tfd {

// Metric floors/caps: pipelines must never emit NaN or infinities into CSV.
inline constexpr double kMseFloor = 1e-300;    // mean squared error floor
inline constexpr double kPsnrCapDb = 300.0;    // reported for exact matches

// log10 of the mean squared complex sample error.
inline double mse_log10(const Signal& est, const Signal& ref) {
  if (est.samples.size() != ref.samples.size())
    throw Error(errc::axis_mismatch, "mse_log10: signal lengths differ");
  double s = 0.0;
  for (std::size_t i = 0; i < est.samples.size(); ++i) s += std::norm(est.samples[i] - ref.samples[i]);
  const double mean = s / static_cast<double>(est.samples.size());
  return std::log10(mean > kMseFloor ? mean : kMseFloor);
}

namespace detail {

// PSNR of one real part stream; peak comes from the reference only.
// Returns false when the part is excluded (zero peak).
inline bool psnr_part(const Signal& est, const Signal& ref, bool imag_part, double& out_db) {
  double peak = 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < est.samples.size(); ++i) {
    const double r = imag_part ? ref.samples[i].imag() : ref.samples[i].real();
    const double e = imag_part ? est.samples[i].imag() : est.samples[i].real();
    peak = std::max(peak, std::abs(r));
    s += (e - r) * (e - r);
  }
  if (peak == 0.0) return false;
  const double mean = s / static_cast<double>(est.samples.size());
  if (mean <= 0.0) {
    out_db = kPsnrCapDb;
    return true;
  }
  out_db = std::min(kPsnrCapDb, 10.0 * std::log10(peak * peak / mean));
  return true;
}

}  // namespace detail

// PSNR computed separately on real and imaginary parts, then averaged.
// A part whose reference peak is zero is excluded and the other part's value
// returned alone.
inline double psnr_avg(const Signal& est, const Signal& ref) {
  if (est.samples.size() != ref.samples.size())
    throw Error(errc::axis_mismatch, "psnr_avg: signal lengths differ");
  double re_db = 0.0, im_db = 0.0;
  const bool has_re = detail::psnr_part(est, ref, false, re_db);
  const bool has_im = detail::psnr_part(est, ref, true, im_db);
  if (has_re && has_im) return 0.5 * (re_db + im_db);
  if (has_re) return re_db;
  if (has_im) return im_db;
  // Reference is identically zero in both parts: perfect silence match caps
  // out, anything else floors out.
  double s = 0.0;
  for (const cplx& v : est.samples) s += std::norm(v);
  return s == 0.0 ? kPsnrCapDb : -kPsnrCapDb;
}

// Global phase that maximizes Re<est * e^{i psi}, ref>; psi is the phase of
// <ref, est> = sum ref * conj(est).
inline Signal align_phase(const Signal& est, const Signal& ref) {
  if (est.samples.size() != ref.samples.size())
    throw Error(errc::axis_mismatch, "align_phase: signal lengths differ");
  cplx inner{0.0, 0.0};
  for (std::size_t i = 0; i < est.samples.size(); ++i) inner += ref.samples[i] * std::conj(est.samples[i]);
  const double psi = std::atan2(inner.imag(), inner.real());
  Signal out = est;
  const cplx rot = std::polar(1.0, psi);
  for (cplx& v : out.samples) v *= rot;
  return out;
}

}  // namespace tfd
