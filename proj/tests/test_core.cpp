#include <catch2/catch_amalgamated.hpp>

#include "tfd/grid.hpp"

using namespace tfd;

namespace {

Axis sec(double origin, double step) { return Axis{origin, step, "s"}; }
Axis hz(double origin, double step) { return Axis{origin, step, "Hz"}; }

}  // namespace

TEST_CASE("grid_alloc zero-initializes and validates") {
  Grid2D g = grid_alloc(4, 4, sec(0.0, 0.5), hz(-1.0, 0.25), GridRole::TFD);
  REQUIRE(g.n_rows == 4);
  REQUIRE(g.n_cols == 4);
  for (const cplx& v : g.values) REQUIRE(v == cplx{0.0, 0.0});

  Grid2D k = grid_alloc(2, 2, hz(0.0, 1.0), sec(0.0, 1.0), GridRole::Kernel);
  REQUIRE(k.values.size() == 4);

  CHECK_THROWS_MATCHES(grid_alloc(3, 0, sec(0, 1), hz(0, 1), GridRole::TFD), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::invalid_dims; }));
  CHECK_THROWS_MATCHES(grid_alloc(3, 3, sec(0, 0.0), hz(0, 1), GridRole::TFD), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::invalid_axis; }));
  CHECK_THROWS_AS(grid_alloc(3, 3, sec(0, -1.0), hz(0, 1), GridRole::TFD), Error);
}

TEST_CASE("grid_sub and grid_l2") {
  Grid2D a = grid_alloc(2, 2, sec(0, 0.5), hz(0, 0.5), GridRole::TFD);
  for (cplx& v : a.values) v = cplx{1.0, 0.0};

  SECTION("a - a is the zero grid") {
    Grid2D d = grid_sub(a, a);
    for (const cplx& v : d.values) CHECK(v == cplx{0.0, 0.0});
    CHECK(grid_l2(d) == 0.0);
  }

  SECTION("hand value: all-ones 2x2 with steps 0.5") {
    // sum |v|^2 * 0.25 = 4 * 0.25 = 1, sqrt = 1
    CHECK(grid_l2(a) == Catch::Approx(1.0).epsilon(1e-14));
  }

  SECTION("axis mismatch is rejected") {
    Grid2D b = grid_alloc(2, 2, sec(0, 0.25), hz(0, 0.5), GridRole::TFD);
    CHECK_THROWS_AS(grid_sub(a, b), Error);
    Grid2D c = grid_alloc(3, 2, sec(0, 0.5), hz(0, 0.5), GridRole::TFD);
    CHECK_THROWS_AS(grid_sub(a, c), Error);
  }

  SECTION("l2 separates equal grids and scales linearly") {
    Grid2D b = a;
    b.at(1, 1) += cplx{0.0, 5e-3};
    CHECK(grid_l2(grid_sub(a, b)) > 0.0);
    Grid2D scaled = a;
    for (cplx& v : scaled.values) v *= cplx{-3.0, 4.0};  // |c| = 5
    CHECK(grid_l2(scaled) == Catch::Approx(5.0 * grid_l2(a)).epsilon(1e-12));
  }
}

TEST_CASE("signal validation") {
  Signal f;
  f.samples = {cplx{1, 0}, cplx{0, 1}};
  f.sample_rate_hz = 10.0;
  f.t_start = -1.0;
  REQUIRE_NOTHROW(validate_signal(f));
  CHECK(f.time_at(3) == Catch::Approx(-0.7));

  Signal bad = f;
  bad.sample_rate_hz = 0.0;
  CHECK_THROWS_AS(validate_signal(bad), Error);
  bad = f;
  bad.samples.resize(1);
  CHECK_THROWS_AS(validate_signal(bad), Error);
}
