#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "tfd/io.hpp"
#include "tfd/kernels.hpp"
#include "tfd/siggen.hpp"
#include "tfd/wvd.hpp"

using namespace tfd;

namespace {

// Brute-force 2D DFT oracle over the wrapped dual lattice.
Grid2D kernel_transform_oracle(const KernelSpec& spec, const Grid2D& target) {
  const detail::TfdGeometry g = detail::geometry_of(target);
  const std::size_t n = g.n, k = g.k;
  Grid2D out;
  out.role = GridRole::TFD;
  out.n_rows = n;
  out.n_cols = k;
  out.axis0 = Axis{0.0, g.dt, "s"};
  out.axis1 = Axis{0.0, g.dw(), "Hz"};
  out.values.assign(n * k, cplx{0, 0});
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < k; ++c) {
      cplx acc{0, 0};
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < k; ++b) {
          const cplx phi = eval_kernel(spec, g.theta_at(a), g.tau_at(b));
          const double ph = -kTwoPi * (static_cast<double>(a * r) / n + static_cast<double>(b * c) / k);
          acc += phi * std::polar(1.0, ph);
        }
      out.at(r, c) = acc * g.dtheta() * g.dtau();
    }
  return out;
}

Grid2D small_target(std::size_t n = 8) {
  Signal f = gen_signal(SignalKind::LFM, 8.0, -0.5, -0.5 + static_cast<double>(n) / 8.0);
  return wvd(f);
}

}  // namespace

TEST_CASE("eval_kernel fixed kinds") {
  CHECK(eval_kernel(KernelSpec::fixed(KernelKind::MargenauHill), 0.0, 123.4) == cplx{1.0, 0.0});
  CHECK(eval_kernel(KernelSpec::fixed(KernelKind::BornJordan), 0.0, 3.0) == cplx{1.0, 0.0});
  CHECK(eval_kernel(KernelSpec::fixed(KernelKind::BornJordan), 1e-12, 1e-12).real() ==
        Catch::Approx(1.0).epsilon(1e-12));

  // Page kernel at theta=2, tau=-3: e^{i 2 |{-3}|} = e^{6i}
  const cplx page = eval_kernel(KernelSpec::fixed(KernelKind::Page), 2.0, -3.0);
  CHECK(page.real() == Catch::Approx(std::cos(6.0)).epsilon(1e-14));
  CHECK(page.imag() == Catch::Approx(std::sin(6.0)).epsilon(1e-14));

  const cplx kr = eval_kernel(KernelSpec::fixed(KernelKind::KirkwoodRihaczek), 3.0, 1.0);
  CHECK(kr.real() == Catch::Approx(std::cos(1.5)).epsilon(1e-14));
  CHECK(kr.imag() == Catch::Approx(std::sin(1.5)).epsilon(1e-14));

  CHECK_THROWS_AS(eval_kernel(KernelSpec::fixed(KernelKind::Page),
                              std::numeric_limits<double>::infinity(), 0.0),
                  Error);

  SECTION("phi(0,0) = 1 for every fixed kernel") {
    for (KernelKind k : {KernelKind::MargenauHill, KernelKind::KirkwoodRihaczek,
                         KernelKind::BornJordan, KernelKind::Page})
      CHECK(std::abs(eval_kernel(KernelSpec::fixed(k), 0.0, 0.0) - cplx{1.0, 0.0}) < 1e-15);
  }
}

TEST_CASE("custom grid kernels answer only on their lattice") {
  Grid2D target = small_target();
  const detail::TfdGeometry g = detail::geometry_of(target);
  Grid2D kg;
  kg.role = GridRole::Kernel;
  kg.n_rows = g.n;
  kg.n_cols = g.k;
  kg.axis0 = detail::spectrum_axis0(g);
  kg.axis1 = detail::spectrum_axis1(g);
  kg.values.assign(g.n * g.k, cplx{0, 0});
  for (std::size_t a = 0; a < g.n; ++a)
    for (std::size_t b = 0; b < g.k; ++b)
      kg.at(a, b) = detail::eval_fixed_kernel(KernelKind::MargenauHill, g.theta_at(a), g.tau_at(b));
  KernelSpec spec = KernelSpec::custom(kg);

  CHECK(std::abs(eval_kernel(spec, g.theta_at(1), g.tau_at(2)) -
                 detail::eval_fixed_kernel(KernelKind::MargenauHill, g.theta_at(1), g.tau_at(2))) <
        1e-15);
  CHECK_THROWS_AS(eval_kernel(spec, 0.5 * g.dtheta(), 0.0), Error);            // off lattice
  CHECK_THROWS_AS(eval_kernel(spec, g.dtheta() * (g.n + 1.0), 0.0), Error);    // outside range
}

TEST_CASE("kernel_transform") {
  Grid2D target = small_target();

  SECTION("identity kernel gives a discrete delta of weight 1/(dx dw)") {
    const detail::TfdGeometry g = detail::geometry_of(target);
    Grid2D ones;
    ones.role = GridRole::Kernel;
    ones.n_rows = g.n;
    ones.n_cols = g.k;
    ones.axis0 = detail::spectrum_axis0(g);
    ones.axis1 = detail::spectrum_axis1(g);
    ones.values.assign(g.n * g.k, cplx{1.0, 0.0});
    Grid2D pi = kernel_transform(KernelSpec::custom(ones), target);
    const double expected = 1.0 / (g.dt * g.dw());
    CHECK(std::abs(pi.at(0, 0) - cplx{expected, 0.0}) < 1e-9 * expected);
    double off = 0.0;
    for (std::size_t i = 1; i < pi.values.size(); ++i) off = std::max(off, std::abs(pi.values[i]));
    CHECK(off < 1e-9 * expected);
  }

  SECTION("matches the brute-force DFT oracle (margenau-hill)") {
    Grid2D pi = kernel_transform(KernelSpec::fixed(KernelKind::MargenauHill), target);
    Grid2D oracle = kernel_transform_oracle(KernelSpec::fixed(KernelKind::MargenauHill), target);
    double max_dev = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < pi.values.size(); ++i) {
      max_dev = std::max(max_dev, std::abs(pi.values[i] - oracle.values[i]));
      scale = std::max(scale, std::abs(oracle.values[i]));
    }
    CHECK(max_dev <= 1e-10 * std::max(1.0, scale));
  }

  SECTION("kirkwood-rihaczek transform is genuinely complex") {
    Grid2D pi = kernel_transform(KernelSpec::fixed(KernelKind::KirkwoodRihaczek), target);
    double max_im = 0.0;
    for (const cplx& v : pi.values) max_im = std::max(max_im, std::abs(v.imag()));
    CHECK(max_im > 1e-3);
  }

  SECTION("real even kernels produce real transforms") {
    for (KernelKind k : {KernelKind::MargenauHill, KernelKind::BornJordan}) {
      Grid2D pi = kernel_transform(KernelSpec::fixed(k), target);
      double max_im = 0.0, max_abs = 0.0;
      for (const cplx& v : pi.values) {
        max_im = std::max(max_im, std::abs(v.imag()));
        max_abs = std::max(max_abs, std::abs(v));
      }
      CHECK(max_im <= 1e-9 * max_abs);
    }
  }

  SECTION("custom kernels loaded from a TFDG file behave like the original") {
    const detail::TfdGeometry g = detail::geometry_of(target);
    Grid2D kg;
    kg.role = GridRole::Kernel;
    kg.n_rows = g.n;
    kg.n_cols = g.k;
    kg.axis0 = detail::spectrum_axis0(g);
    kg.axis1 = detail::spectrum_axis1(g);
    kg.values = detail::sample_kernel_wrapped(KernelSpec::fixed(KernelKind::BornJordan), g);
    std::stringstream buf;
    write_tfdg(kg, buf);
    KernelSpec from_file = KernelSpec::custom(read_tfdg(buf));
    Grid2D a = kernel_transform(from_file, target);
    Grid2D b = kernel_transform(KernelSpec::fixed(KernelKind::BornJordan), target);
    for (std::size_t i = 0; i < a.values.size(); ++i)
      CHECK(std::abs(a.values[i] - b.values[i]) < 1e-12);
  }

  SECTION("FT pair consistency: inverse 2D DFT recovers the sampled kernel") {
    const detail::TfdGeometry g = detail::geometry_of(target);
    Grid2D pi = kernel_transform(KernelSpec::fixed(KernelKind::Page), target);
    std::vector<cplx> back = detail::dft2_inverse(pi.values, g.n, g.k);
    for (cplx& v : back) v /= g.dtheta() * g.dtau();
    const std::vector<cplx> phi =
        detail::sample_kernel_wrapped(KernelSpec::fixed(KernelKind::Page), g);
    double max_dev = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i)
      max_dev = std::max(max_dev, std::abs(back[i] - phi[i]));
    CHECK(max_dev < 1e-10);
  }
}
