#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "tfd/grid.hpp"

namespace tfd {

// TFDG binary grid file, little-endian:
//   magic "TFDG" | u32 version=1 | u8 role | u32 n_rows | u32 n_cols |
//   f64 origin0 | f64 step0 | f64 origin1 | f64 step1 |
//   n_rows*n_cols interleaved (re, im) f64, row-major.
// Role byte: 0=tfd, 1=spectrum, 2=kernel, 3=correlation.
// Axis units are implied by the role and not stored.

namespace detail {

template <typename T>
void write_le(std::ostream& os, T v) {
  // This code targets little-endian hosts; a byte copy is the LE encoding.
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_le(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}

inline void set_role_units(Grid2D& g) {
  switch (g.role) {
    case GridRole::TFD:
      g.axis0.unit = "s";
      g.axis1.unit = "Hz";
      break;
    case GridRole::Spectrum:
    case GridRole::Kernel:
      g.axis0.unit = "Hz";
      g.axis1.unit = "s";
      break;
    case GridRole::Correlation:
      g.axis0.unit = "s";
      g.axis1.unit = "s";
      break;
  }
}

}  // namespace detail

inline void write_tfdg(const Grid2D& g, std::ostream& os) {
  os.write("TFDG", 4);
  detail::write_le<std::uint32_t>(os, 1u);
  detail::write_le<std::uint8_t>(os, static_cast<std::uint8_t>(g.role));
  detail::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(g.n_rows));
  detail::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(g.n_cols));
  detail::write_le<double>(os, g.axis0.origin);
  detail::write_le<double>(os, g.axis0.step);
  detail::write_le<double>(os, g.axis1.origin);
  detail::write_le<double>(os, g.axis1.step);
  for (const cplx& v : g.values) {
    detail::write_le<double>(os, v.real());
    detail::write_le<double>(os, v.imag());
  }
  if (!os) throw Error(errc::io_failure, "failed to write TFDG stream");
}

inline void write_tfdg(const Grid2D& g, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(errc::io_failure, "cannot open for write: " + path);
  write_tfdg(g, os);
}

inline Grid2D read_tfdg(std::istream& is) {
  char magic[4] = {};
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "TFDG", 4) != 0)
    throw Error(errc::parse_failure, "not a TFDG file (bad magic)");
  const auto version = detail::read_le<std::uint32_t>(is);
  if (version != 1u)
    throw Error(errc::parse_failure, "unsupported TFDG version " + std::to_string(version));
  const auto role_byte = detail::read_le<std::uint8_t>(is);
  if (role_byte > 3u) throw Error(errc::parse_failure, "bad TFDG role byte");
  const auto n_rows = detail::read_le<std::uint32_t>(is);
  const auto n_cols = detail::read_le<std::uint32_t>(is);
  Grid2D g;
  g.role = static_cast<GridRole>(role_byte);
  g.n_rows = n_rows;
  g.n_cols = n_cols;
  g.axis0.origin = detail::read_le<double>(is);
  g.axis0.step = detail::read_le<double>(is);
  g.axis1.origin = detail::read_le<double>(is);
  g.axis1.step = detail::read_le<double>(is);
  if (n_rows < 2 || n_cols < 2) throw Error(errc::parse_failure, "TFDG dims below 2x2");
  if (!(g.axis0.step > 0.0) || !(g.axis1.step > 0.0))
    throw Error(errc::parse_failure, "TFDG axis steps must be positive");
  detail::set_role_units(g);
  g.values.resize(static_cast<std::size_t>(n_rows) * n_cols);
  for (cplx& v : g.values) {
    const double re = detail::read_le<double>(is);
    const double im = detail::read_le<double>(is);
    v = cplx{re, im};
  }
  if (!is) throw Error(errc::parse_failure, "truncated TFDG file");
  return g;
}

inline Grid2D read_tfdg(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(errc::io_failure, "cannot open for read: " + path);
  return read_tfdg(is);
}

// Signal CSV: header "t,re,im", one row per sample, full double precision.

inline void write_signal_csv(const Signal& f, std::ostream& os) {
  os << "t,re,im\n";
  char buf[128];
  for (std::size_t n = 0; n < f.samples.size(); ++n) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", f.time_at(n), f.samples[n].real(),
                  f.samples[n].imag());
    os << buf;
  }
  if (!os) throw Error(errc::io_failure, "failed to write signal CSV");
}

inline void write_signal_csv(const Signal& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(errc::io_failure, "cannot open for write: " + path);
  write_signal_csv(f, os);
}

inline Signal read_signal_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(errc::parse_failure, "empty signal CSV");
  // tolerate trailing \r from other platforms
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
  if (line != "t,re,im") throw Error(errc::parse_failure, "signal CSV must start with 't,re,im'");
  std::vector<double> t;
  std::vector<cplx> samples;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    double tv = 0, re = 0, im = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &tv, &re, &im) != 3)
      throw Error(errc::parse_failure, "bad signal CSV row: " + line);
    t.push_back(tv);
    samples.push_back(cplx{re, im});
  }
  if (samples.size() < 2) throw Error(errc::parse_failure, "signal CSV needs at least 2 samples");
  const double dt = t[1] - t[0];
  if (!(dt > 0.0)) throw Error(errc::parse_failure, "signal CSV time axis must increase");
  for (std::size_t n = 1; n + 1 < t.size(); ++n) {
    const double step = t[n + 1] - t[n];
    if (std::abs(step - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
      throw Error(errc::parse_failure, "signal CSV sampling is not uniform");
  }
  Signal f;
  f.samples = std::move(samples);
  f.sample_rate_hz = 1.0 / dt;
  f.t_start = t[0];
  return f;
}

inline Signal read_signal_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(errc::io_failure, "cannot open for read: " + path);
  return read_signal_csv(is);
}

}  // namespace tfd
