#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "tfd/io.hpp"
#include "tfd/siggen.hpp"

using namespace tfd;

TEST_CASE("TFDG grid round trip preserves everything") {
  Grid2D g = grid_alloc(3, 5, Axis{-5.0, 0.0125, "s"}, Axis{-20.0, 0.025, "Hz"}, GridRole::TFD);
  for (std::size_t i = 0; i < g.values.size(); ++i)
    g.values[i] = cplx{0.25 * static_cast<double>(i), -1.0 / (1.0 + static_cast<double>(i))};

  std::stringstream buf;
  write_tfdg(g, buf);
  Grid2D back = read_tfdg(buf);

  CHECK(back.role == g.role);
  CHECK(back.n_rows == g.n_rows);
  CHECK(back.n_cols == g.n_cols);
  CHECK(back.axis0.origin == g.axis0.origin);
  CHECK(back.axis0.step == g.axis0.step);
  CHECK(back.axis1.origin == g.axis1.origin);
  CHECK(back.axis1.step == g.axis1.step);
  REQUIRE(back.values.size() == g.values.size());
  for (std::size_t i = 0; i < g.values.size(); ++i) CHECK(back.values[i] == g.values[i]);
}

TEST_CASE("TFDG header layout is stable") {
  Grid2D g = grid_alloc(2, 2, Axis{0.0, 1.0, "Hz"}, Axis{0.0, 2.0, "s"}, GridRole::Kernel);
  std::stringstream buf;
  write_tfdg(g, buf);
  const std::string bytes = buf.str();
  REQUIRE(bytes.size() == 4 + 4 + 1 + 4 + 4 + 4 * 8 + 4 * 16);
  CHECK(bytes.substr(0, 4) == "TFDG");
  CHECK(static_cast<unsigned char>(bytes[4]) == 1);  // version, LE low byte
  CHECK(static_cast<unsigned char>(bytes[8]) == 2);  // role byte: kernel
}

TEST_CASE("TFDG rejects malformed input") {
  std::stringstream buf("not a grid at all");
  CHECK_THROWS_AS(read_tfdg(buf), Error);

  Grid2D g = grid_alloc(2, 2, Axis{0, 1, ""}, Axis{0, 1, ""}, GridRole::Spectrum);
  std::stringstream ok;
  write_tfdg(g, ok);
  std::string bytes = ok.str();
  std::stringstream truncated(bytes.substr(0, bytes.size() - 8));
  CHECK_THROWS_AS(read_tfdg(truncated), Error);
}

TEST_CASE("signal CSV round trip") {
  Signal f = gen_signal(SignalKind::GELFM, 25.0, -2.0, 2.0);
  std::stringstream buf;
  write_signal_csv(f, buf);
  Signal back = read_signal_csv(buf);
  REQUIRE(back.samples.size() == f.samples.size());
  CHECK(back.sample_rate_hz == Catch::Approx(f.sample_rate_hz).epsilon(1e-12));
  CHECK(back.t_start == Catch::Approx(f.t_start).margin(1e-15));
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    CHECK(back.samples[i].real() == f.samples[i].real());
    CHECK(back.samples[i].imag() == f.samples[i].imag());
  }
}

TEST_CASE("signal CSV rejects bad headers and non-uniform spacing") {
  std::stringstream bad1("x,y,z\n0,1,0\n");
  CHECK_THROWS_AS(read_signal_csv(bad1), Error);
  std::stringstream bad2("t,re,im\n0,1,0\n0.5,1,0\n0.7,1,0\n");
  CHECK_THROWS_AS(read_signal_csv(bad2), Error);
}
