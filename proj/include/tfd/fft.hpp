#pragma once

#include <complex>
#include <cstddef>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "tfd/common.hpp"

namespace tfd::detail {

// FFTW plan creation/destruction is not thread safe; execution of distinct
// plans is. All transforms are unnormalized in-place DFTs with the e^{-2pi i}
// forward sign, operating directly on std::complex<double> buffers (layout
// compatible with fftw_complex).

inline std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

inline fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

// 1D transform of a contiguous vector.
inline void fft_1d(cplx* data, std::size_t n, int sign) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(data), as_fftw(data), sign,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(fftw_mutex());
  fftw_destroy_plan(plan);
}

// Transform every row of a row-major n_rows x n_cols matrix (along columns).
inline void fft_rows(cplx* data, std::size_t n_rows, std::size_t n_cols, int sign) {
  int n = static_cast<int>(n_cols);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    plan = fftw_plan_many_dft(1, &n, static_cast<int>(n_rows), as_fftw(data), nullptr, 1, n,
                              as_fftw(data), nullptr, 1, n, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(fftw_mutex());
  fftw_destroy_plan(plan);
}

// Transform every column of a row-major n_rows x n_cols matrix (along rows).
inline void fft_cols(cplx* data, std::size_t n_rows, std::size_t n_cols, int sign) {
  int n = static_cast<int>(n_rows);
  int stride = static_cast<int>(n_cols);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    plan = fftw_plan_many_dft(1, &n, static_cast<int>(n_cols), as_fftw(data), nullptr, stride, 1,
                              as_fftw(data), nullptr, stride, 1, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(fftw_mutex());
  fftw_destroy_plan(plan);
}

inline void fft_2d(cplx* data, std::size_t n_rows, std::size_t n_cols, int sign) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    plan = fftw_plan_dft_2d(static_cast<int>(n_rows), static_cast<int>(n_cols), as_fftw(data),
                            as_fftw(data), sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(fftw_mutex());
  fftw_destroy_plan(plan);
}

inline void scale(std::vector<cplx>& v, double s) {
  for (cplx& x : v) x *= s;
}

}  // namespace tfd::detail
