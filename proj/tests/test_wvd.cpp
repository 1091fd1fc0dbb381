#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tfd/io.hpp"
#include "tfd/siggen.hpp"
#include "tfd/wvd.hpp"

using namespace tfd;

namespace {

Signal gaussian_signal(double fs = 20.0, double t0 = -5.0, double t1 = 5.0) {
  // f(t) = 2^{1/4} e^{-pi t^2}, unit L2 norm; WVD is 2 e^{-2 pi (t^2 + w^2)}.
  Signal f;
  f.sample_rate_hz = fs;
  f.t_start = t0;
  const auto n = static_cast<std::size_t>(std::llround((t1 - t0) * fs));
  f.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t0 + static_cast<double>(i) / fs;
    f.samples[i] = cplx{std::pow(2.0, 0.25) * std::exp(-kPi * t * t), 0.0};
  }
  return f;
}

double correlation(const Signal& a, const Signal& b) {
  cplx inner{0, 0};
  double na = 0, nb = 0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    inner += a.samples[i] * std::conj(b.samples[i]);
    na += std::norm(a.samples[i]);
    nb += std::norm(b.samples[i]);
  }
  return std::abs(inner) / std::sqrt(na * nb);
}

}  // namespace

TEST_CASE("instantaneous autocorrelation") {
  SECTION("all-zero signal gives a zero lag grid") {
    Signal f;
    f.sample_rate_hz = 4.0;
    f.samples.assign(8, cplx{0, 0});
    Grid2D lag = instantaneous_autocorrelation(f);
    for (const cplx& v : lag.values) CHECK(v == cplx{0, 0});
  }

  SECTION("two-sample window edge") {
    Signal f;
    f.sample_rate_hz = 1.0;
    f.samples = {cplx{1, 0}, cplx{1, 0}};
    Grid2D lag = instantaneous_autocorrelation(f);
    REQUIRE(lag.n_rows == 2);
    REQUIRE(lag.n_cols == 3);  // m in {-1, 0, 1}
    CHECK(lag.at(0, 1) == cplx{1, 0});  // m = 0
    CHECK(lag.at(0, 2) == cplx{0, 0});  // m = +1 reaches f(t_{-1}): out of window
    CHECK(lag.at(0, 0) == cplx{0, 0});
  }

  SECTION("unit impulse has a single nonzero entry at [n0, 0]") {
    Signal f;
    f.sample_rate_hz = 2.0;
    f.samples.assign(9, cplx{0, 0});
    const std::size_t n0 = 5;
    f.samples[n0] = cplx{2.0, -1.0};
    Grid2D lag = instantaneous_autocorrelation(f);
    const std::size_t mid = lag.n_cols / 2;
    for (std::size_t r = 0; r < lag.n_rows; ++r)
      for (std::size_t c = 0; c < lag.n_cols; ++c) {
        if (r == n0 && c == mid)
          CHECK(std::abs(lag.at(r, c) - cplx{5.0, 0.0}) < 1e-14);
        else
          CHECK(lag.at(r, c) == cplx{0, 0});
      }
  }

  SECTION("Hermitian in lag") {
    Signal f = awgn(gen_signal(SignalKind::QFM, 12.0, -2.0, 2.0), 5.0, 3);
    Grid2D lag = instantaneous_autocorrelation(f);
    const std::size_t mid = lag.n_cols / 2;
    for (std::size_t r = 0; r < lag.n_rows; ++r)
      for (std::size_t m = 0; m <= mid; ++m)
        CHECK(std::abs(lag.at(r, mid + m) - std::conj(lag.at(r, mid - m))) < 1e-14);
  }
}

TEST_CASE("wvd of the zero signal is the zero grid") {
  Signal z;
  z.sample_rate_hz = 5.0;
  z.samples.assign(12, cplx{0, 0});
  Grid2D w = wvd(z);
  for (const cplx& v : w.values) CHECK(v == cplx{0, 0});
}

TEST_CASE("wvd of the Gaussian matches the closed form") {
  Signal f = gaussian_signal();
  Grid2D w = wvd(f);
  REQUIRE(w.n_rows == 200);
  REQUIRE(w.n_cols == 399);

  SECTION("grid values vs 2 e^{-2 pi (t^2 + w^2)} away from edges") {
    double max_dev = 0.0;
    for (std::size_t r = 0; r < w.n_rows; ++r) {
      const double t = w.axis0_at(r);
      if (std::abs(t) > 3.0) continue;
      for (std::size_t c = 0; c < w.n_cols; ++c) {
        const double wf = w.axis1_at(c);
        max_dev = std::max(max_dev,
                           std::abs(w.at(r, c).real() - 2.0 * std::exp(-kTwoPi * (t * t + wf * wf))));
      }
    }
    CHECK(max_dev < 1e-6);
  }

  SECTION("direct quadrature of the lag integral agrees at probe points") {
    // Independent oracle: fine Riemann sum over tau with the analytic f.
    auto analytic = [](double t) { return std::pow(2.0, 0.25) * std::exp(-kPi * t * t); };
    const double dtau = 0.002, tau_max = 24.0;
    struct Probe { std::size_t r, c; };
    for (Probe p : {Probe{100, 199}, Probe{107, 230}, Probe{80, 150}}) {
      const double t = w.axis0_at(p.r), wf = w.axis1_at(p.c);
      cplx acc{0, 0};
      for (double tau = -tau_max; tau <= tau_max; tau += dtau)
        acc += analytic(t + tau / 2.0) * analytic(t - tau / 2.0) *
               std::polar(1.0, -kTwoPi * tau * wf) * dtau;
      CHECK(std::abs(w.at(p.r, p.c) - acc) < 1e-6);
    }
  }

  SECTION("realness: WVD of a single signal") {
    double max_im = 0.0, max_abs = 0.0;
    for (const cplx& v : w.values) {
      max_im = std::max(max_im, std::abs(v.imag()));
      max_abs = std::max(max_abs, std::abs(v));
    }
    CHECK(max_im <= 1e-9 * max_abs);
  }

  SECTION("time marginal equals |f(t)|^2 row by row") {
    for (std::size_t r = 0; r < w.n_rows; ++r) {
      const double t = w.axis0_at(r);
      if (std::abs(t) > 4.0) continue;
      cplx acc{0, 0};
      for (std::size_t c = 0; c < w.n_cols; ++c) acc += w.at(r, c);
      const double marginal = acc.real() * w.axis1.step;
      CHECK(marginal == Catch::Approx(std::norm(f.samples[r])).epsilon(1e-6));
    }
  }

  SECTION("Parseval: energy equals ||f||^4 = 1") {
    CHECK(wvd_energy(w) == Catch::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("wvd of the LFM example") {
  Signal f = gen_signal(SignalKind::LFM, 80.0, -5.0, 5.0);
  Warnings warn;
  Grid2D w = wvd(f, &warn);

  SECTION("no aliasing flag: instantaneous frequency stays below fs/4") {
    CHECK_FALSE(warn.aliasing);
  }

  SECTION("row argmax tracks the instantaneous frequency 1 + t") {
    for (std::size_t r = 0; r < w.n_rows; r += 7) {
      const double t = w.axis0_at(r);
      if (std::abs(t) > 4.0) continue;
      std::size_t cbest = 0;
      double best = -1.0;
      for (std::size_t c = 0; c < w.n_cols; ++c) {
        if (w.at(r, c).real() > best) {
          best = w.at(r, c).real();
          cbest = c;
        }
      }
      CHECK(std::abs(w.axis1_at(cbest) - (1.0 + t)) <= w.axis1.step + 1e-12);
    }
  }

  SECTION("Parseval: ||f||^2 is the window length, energy 100") {
    CHECK(wvd_energy(w) == Catch::Approx(100.0).epsilon(1e-2));
  }

  SECTION("zero grid has zero energy") {
    Grid2D z = w;
    for (cplx& v : z.values) v = 0.0;
    CHECK(wvd_energy(z) == 0.0);
  }
}

TEST_CASE("aliasing detector") {
  // At fs = 8 the LFM instantaneous frequency (up to 6 Hz) crosses fs/4 = 2.
  Signal f = gen_signal(SignalKind::LFM, 8.0, -5.0, 5.0);
  Warnings warn;
  wvd(f, &warn);
  CHECK(warn.aliasing);
}

TEST_CASE("reconstruct") {
  SECTION("round trip on the Gaussian") {
    Signal f = gaussian_signal();
    Reconstruction r = reconstruct(wvd(f), f);
    CHECK_FALSE(r.warnings.non_psd);
    CHECK_FALSE(r.warnings.not_rank_one);
    CHECK(correlation(r.signal, f) >= 0.999);
  }

  SECTION("zero grid: NonPSD warning and zero signal") {
    Signal f = gaussian_signal();
    Grid2D w = wvd(f);
    for (cplx& v : w.values) v = 0.0;
    Reconstruction r = reconstruct(w);
    CHECK(r.warnings.non_psd);
    for (const cplx& v : r.signal.samples) CHECK(v == cplx{0, 0});
  }

  SECTION("global phase ambiguity: magnitudes recovered without a reference") {
    Signal f = gaussian_signal();
    Signal g = f;
    const cplx rot = std::polar(1.0, kPi / 3.0);
    for (cplx& v : g.samples) v *= rot;
    Reconstruction r = reconstruct(wvd(g));
    REQUIRE_FALSE(r.warnings.non_psd);
    double max_dev = 0.0;
    for (std::size_t i = 0; i < f.samples.size(); ++i)
      max_dev = std::max(max_dev, std::abs(std::abs(r.signal.samples[i]) - std::abs(f.samples[i])));
    CHECK(max_dev <= 1e-3);
    // and the recovered signal matches the Gaussian up to a global phase
    CHECK(correlation(r.signal, f) >= 0.999);
  }

  SECTION("phase reference locks the global phase") {
    Signal f = gen_signal(SignalKind::SFM, 24.0, -5.0, 5.0);
    Reconstruction r = reconstruct(wvd(f), f);
    double err = 0.0;
    for (std::size_t i = 0; i < f.samples.size(); ++i)
      err += std::norm(r.signal.samples[i] - f.samples[i]);
    CHECK(std::sqrt(err / signal_energy(f)) < 0.05);
    CHECK(correlation(r.signal, f) >= 0.999);
  }

  SECTION("rank-2 grid raises the NotRankOne warning") {
    Signal a = gaussian_signal(20.0, -5.0, 5.0);
    Signal b = a;
    // Disjoint Gaussian bumps of equal energy: lambda2/lambda1 ~ 1.
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
      const double t = a.time_at(i);
      a.samples[i] = std::exp(-kPi * (t + 2.5) * (t + 2.5));
      b.samples[i] = std::exp(-kPi * (t - 2.5) * (t - 2.5));
    }
    Grid2D wa = wvd(a), wb = wvd(b);
    Grid2D sum = wa;
    for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += wb.values[i];
    Reconstruction r = reconstruct(sum);
    CHECK(r.warnings.not_rank_one);
  }

  SECTION("dims guard: reconstruct requires K >= 2N-1") {
    Grid2D g = grid_alloc(8, 9, Axis{0.0, 0.1, "s"}, Axis{-2.5, 10.0 / (2 * 9 * 1.0) / 10.0, "Hz"},
                          GridRole::TFD);
    g.axis1.step = 1.0 / (2.0 * 9 * 0.1);  // consistent dw for K=9
    g.axis1.origin = -4.0 * g.axis1.step;
    CHECK_THROWS_AS(reconstruct(g), Error);
  }
}

TEST_CASE("padded wvd keeps the invariants") {
  Signal f = gaussian_signal(20.0, -3.0, 3.0);
  Grid2D w = wvd(f, nullptr, 2);
  REQUIRE(w.n_cols == 2 * (2 * f.samples.size() - 1));
  // time marginal survives zero padding
  for (std::size_t r = 0; r < w.n_rows; r += 11) {
    cplx acc{0, 0};
    for (std::size_t c = 0; c < w.n_cols; ++c) acc += w.at(r, c);
    CHECK(acc.real() * w.axis1.step == Catch::Approx(std::norm(f.samples[r])).margin(1e-9));
  }
  Reconstruction r = reconstruct(w, f);
  CHECK(correlation(r.signal, f) >= 0.999);
}
