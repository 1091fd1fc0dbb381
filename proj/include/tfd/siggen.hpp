#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tfd/fft.hpp"
#include "tfd/grid.hpp"

namespace tfd {

enum class SignalKind { LFM, GELFM, QFM, SFM };

inline const char* signal_kind_name(SignalKind k) {
  switch (k) {
    case SignalKind::LFM: return "lfm";
    case SignalKind::GELFM: return "gelfm";
    case SignalKind::QFM: return "qfm";
    case SignalKind::SFM: return "sfm";
  }
  return "?";
}

inline SignalKind parse_signal_kind(const std::string& s) {
  if (s == "lfm" || s == "LFM") return SignalKind::LFM;
  if (s == "gelfm" || s == "GELFM") return SignalKind::GELFM;
  if (s == "qfm" || s == "QFM") return SignalKind::QFM;
  if (s == "sfm" || s == "SFM") return SignalKind::SFM;
  throw Error(errc::invalid_config, "unknown signal kind: " + s);
}

enum class NoiseKind { White, Pink, Blue, Red };

inline const char* noise_kind_name(NoiseKind k) {
  switch (k) {
    case NoiseKind::White: return "white";
    case NoiseKind::Pink: return "pink";
    case NoiseKind::Blue: return "blue";
    case NoiseKind::Red: return "red";
  }
  return "?";
}

inline NoiseKind parse_noise_kind(const std::string& s) {
  if (s == "white") return NoiseKind::White;
  if (s == "pink") return NoiseKind::Pink;
  if (s == "blue") return NoiseKind::Blue;
  if (s == "red") return NoiseKind::Red;
  throw Error(errc::invalid_config, "unknown noise kind: " + s);
}

// Test signals on the right-open interval [t0, t1), step 1/fs:
//   lfm    exp(2 pi i (x + x^2/2))
//   gelfm  exp(-(x+1)^2/8) * exp(2 pi i x^2)
//   qfm    exp(2 pi i (-3x + x^2/2 + x^3/4))
//   sfm    exp(i (1.3 pi x + 2 sin(0.6 pi x)))
inline Signal gen_signal(SignalKind kind, double fs, double t0, double t1) {
  if (!(fs > 0.0)) throw Error(errc::invalid_signal, "sample rate must be positive");
  if (!(t0 < t1)) throw Error(errc::invalid_signal, "interval start must precede end");
  const auto n = static_cast<std::size_t>(std::llround((t1 - t0) * fs));
  if (n < 2) throw Error(errc::invalid_signal, "interval too short for 2 samples");
  Signal f;
  f.sample_rate_hz = fs;
  f.t_start = t0;
  f.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = t0 + static_cast<double>(i) / fs;
    switch (kind) {
      case SignalKind::LFM:
        f.samples[i] = std::polar(1.0, kTwoPi * (x + 0.5 * x * x));
        break;
      case SignalKind::GELFM:
        f.samples[i] = std::exp(-(x + 1.0) * (x + 1.0) / 8.0) * std::polar(1.0, kTwoPi * x * x);
        break;
      case SignalKind::QFM:
        f.samples[i] = std::polar(1.0, kTwoPi * (-3.0 * x + 0.5 * x * x + 0.25 * x * x * x));
        break;
      case SignalKind::SFM:
        f.samples[i] = std::polar(1.0, 1.3 * kPi * x + 2.0 * std::sin(0.6 * kPi * x));
        break;
    }
  }
  return f;
}

namespace detail {

// Deterministic noise stream: mt19937_64 keyed by splitmix64(seed ^ tag),
// mapped to uniforms via the top 53 bits, then Box-Muller. mt19937_64 and
// this mapping are fully specified, so streams are stable across platforms.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class GaussianStream {
public:
  GaussianStream(std::uint64_t seed, std::uint64_t tag) : rng_(splitmix64(seed ^ splitmix64(tag))) {}

  double uniform01() {  // in (0, 1]
    return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1p-53;
  }

  cplx complex_normal() {  // circular, unit variance per component
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return cplx{r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
  }

private:
  std::mt19937_64 rng_;
};

constexpr std::uint64_t kAwgnTag = 0x6177676eULL;    // "awgn"
constexpr std::uint64_t kColorTag = 0x636f6c6fULL;   // "colo"

inline Signal add_scaled_noise(const Signal& f, std::vector<cplx> noise, double snr_db) {
  Signal g = f;
  if (std::isinf(snr_db) && snr_db > 0) return g;  // +inf sentinel: no noise
  double ef = signal_energy(f);
  double en = 0.0;
  for (const cplx& v : noise) en += std::norm(v);
  if (en <= 0.0) throw Error(errc::degenerate_input, "noise realization has zero energy");
  // Post-hoc scaling: 10 log10(||f||^2 / ||n||^2) = snr_db exactly.
  const double scale = std::sqrt(ef * std::pow(10.0, -snr_db / 10.0) / en);
  for (std::size_t i = 0; i < g.samples.size(); ++i) g.samples[i] += scale * noise[i];
  return g;
}

}  // namespace detail

// g = f + n with complex circular white Gaussian n, scaled after the draw so
// the requested SNR holds exactly. Deterministic per seed.
inline Signal awgn(const Signal& f, double snr_db, std::uint64_t seed) {
  validate_signal(f);
  if (std::isnan(snr_db)) throw Error(errc::invalid_config, "snr_db must not be NaN");
  detail::GaussianStream stream(seed, detail::kAwgnTag);
  std::vector<cplx> n(f.samples.size());
  for (cplx& v : n) v = stream.complex_normal();
  return detail::add_scaled_noise(f, std::move(n), snr_db);
}

// Colored noise via spectral shaping of a white draw: amplitude |nu|^e over
// DFT bin frequencies nu with e = -1/2 (pink), +1/2 (blue), -1 (red); the DC
// bin is zeroed, then inverse DFT and exact SNR scaling.
inline Signal colored_noise(const Signal& f, NoiseKind color, double snr_db, std::uint64_t seed) {
  validate_signal(f);
  if (std::isnan(snr_db)) throw Error(errc::invalid_config, "snr_db must not be NaN");
  if (color == NoiseKind::White) return awgn(f, snr_db, seed);
  double expo = 0.0;
  switch (color) {
    case NoiseKind::Pink: expo = -0.5; break;
    case NoiseKind::Blue: expo = 0.5; break;
    case NoiseKind::Red: expo = -1.0; break;
    case NoiseKind::White: break;
  }
  const std::size_t n = f.samples.size();
  detail::GaussianStream stream(seed ^ static_cast<std::uint64_t>(color), detail::kColorTag);
  std::vector<cplx> spec(n);
  for (cplx& v : spec) v = stream.complex_normal();
  detail::fft_1d(spec.data(), n, FFTW_FORWARD);
  const double fs = f.sample_rate_hz;
  spec[0] = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    const auto sj = static_cast<long long>(j);
    const long long half = static_cast<long long>(n) / 2;
    const long long signed_bin = (sj <= half && sj * 2 != static_cast<long long>(n))
                                     ? sj
                                     : sj - static_cast<long long>(n);
    const double nu = std::abs(static_cast<double>(signed_bin)) * fs / static_cast<double>(n);
    spec[j] *= std::pow(nu, expo);
  }
  detail::fft_1d(spec.data(), n, FFTW_BACKWARD);
  detail::scale(spec, 1.0 / static_cast<double>(n));
  return detail::add_scaled_noise(f, std::move(spec), snr_db);
}

}  // namespace tfd
