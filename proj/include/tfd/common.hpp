#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tfd {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Error codes split into two classes: validation errors (bad input shapes,
// axes, configs, files) and numerical guards (limits the algorithms impose
// on themselves). The CLI maps the former to exit code 2, the latter to 3.
enum class errc {
  invalid_dims,
  invalid_axis,
  axis_mismatch,
  invalid_signal,
  invalid_config,
  io_failure,
  parse_failure,
  size_limit,
  degenerate_input,
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }

  bool is_numerical_guard() const noexcept {
    return code_ == errc::size_limit || code_ == errc::degenerate_input;
  }

private:
  errc code_;
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_dims: return "InvalidDims";
    case errc::invalid_axis: return "InvalidAxis";
    case errc::axis_mismatch: return "AxisMismatch";
    case errc::invalid_signal: return "InvalidSignal";
    case errc::invalid_config: return "InvalidConfig";
    case errc::io_failure: return "IoError";
    case errc::parse_failure: return "ParseError";
    case errc::size_limit: return "SizeLimit";
    case errc::degenerate_input: return "DegenerateInput";
  }
  return "Error";
}

// Non-fatal diagnostics raised by the numeric pipelines. Callers that do not
// care pass nullptr and the flags are dropped.
struct Warnings {
  bool aliasing = false;      // signal energy above fs/4 exceeds 1% of total
  bool not_rank_one = false;  // |lambda2/lambda1| > 0.5 after filtering
  bool non_psd = false;       // leading eigenvalue <= 0

  void merge_into(Warnings* out) const {
    if (!out) return;
    out->aliasing |= aliasing;
    out->not_rank_one |= not_rank_one;
    out->non_psd |= non_psd;
  }
};

}  // namespace tfd
