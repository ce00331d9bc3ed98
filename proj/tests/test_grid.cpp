#include <cmath>
#include <filesystem>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "hylos/error.hpp"
#include "hylos/grid.hpp"
#include "hylos/io.hpp"

using namespace hylos;
using hylos::testing::cube;
using hylos::testing::line;
using hylos::testing::sup_diff;

TEST_CASE("grid construction") {
  const Grid g = line(64, 8.0);
  CHECK(g.size() == 64);
  CHECK(g.spacing(0) == doctest::Approx(0.125));
  CHECK(g.coordinate(0, 0) == -4.0);
  CHECK(g.coordinate(0, 32) == doctest::Approx(0.0));

  const double l[] = {8.0};
  const std::size_t bad[] = {100};
  CHECK_THROWS_AS(Grid::make(1, l, bad), Error);
  const std::size_t tiny[] = {4};
  CHECK_THROWS_AS(Grid::make(1, l, tiny), Error);
  CHECK_THROWS_AS(Grid::make(4, l, bad), Error);

  const Grid g3 = cube(3, 8, 2.0);
  for (std::size_t n : {std::size_t{0}, std::size_t{77}, g3.size() - 1}) CHECK(g3.linear(g3.indices(n)) == n);
}

TEST_CASE("periodic trapezoid integrates a Gaussian to spectral accuracy") {
  const Grid g = line(256, 30.0);
  RealField d(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) d[n] = std::exp(-g.position(n)[0] * g.position(n)[0]);
  CHECK(integrate(d, g) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));

  const Grid g2 = cube(2, 64, 20.0);
  RealField d2(g2.size());
  for (std::size_t n = 0; n < g2.size(); ++n) {
    const Point x = g2.position(n);
    d2[n] = std::exp(-(x[0] * x[0] + x[1] * x[1]));
  }
  CHECK(integrate(d2, g2) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("spectral derivatives of resolved modes are exact") {
  const double L = 2.0 * std::numbers::pi;
  const Grid g = line(32, L);
  const ComplexField f = ComplexField::from_function(g, [](const Point& x) { return cplx{std::sin(3.0 * x[0]), 0.0}; });
  const ComplexField df = ComplexField::from_function(g, [](const Point& x) { return cplx{3.0 * std::cos(3.0 * x[0]), 0.0}; });
  CHECK(sup_diff(gradient(f)[0], df) < 1e-12);
  CHECK(sup_diff(laplacian(f), f * cplx{-9.0, 0.0}) < 1e-11);

  const Grid g2 = cube(2, 32, L);
  const ComplexField p = ComplexField::from_function(g2, [](const Point& x) { return std::polar(1.0, 2.0 * x[0] - x[1]); });
  CHECK(sup_diff(laplacian(p), p * cplx{-5.0, 0.0}) < 1e-11);
  CHECK(sup_diff(gradient(p)[1], p * cplx{0.0, -1.0}) < 1e-12);
}

TEST_CASE("gradient rejects non-finite input") {
  ComplexField f(line(16, 1.0));
  f[3] = cplx{std::nan(""), 0.0};
  CHECK_THROWS_AS(gradient(f), Error);
}

TEST_CASE("discrete divergence theorem") {
  const Grid g = cube(2, 64, 16.0);
  std::array<RealField, 3> j{RealField(g.size()), RealField(g.size()), RealField(g.size())};
  for (std::size_t n = 0; n < g.size(); ++n) {
    const Point x = g.position(n);
    j[0][n] = x[1] * std::exp(-(x[0] * x[0] + 2.0 * x[1] * x[1]));
    j[1][n] = std::sin(x[0]) * std::exp(-(x[0] * x[0] + x[1] * x[1]));
  }
  CHECK(std::abs(integrate(divergence(j, g), g)) < 1e-10);
}

TEST_CASE("translation by a Fourier phase is exact for band-limited fields") {
  const Grid g = line(128, 2.0 * std::numbers::pi);
  const ComplexField f = ComplexField::from_function(g, [](const Point& x) { return cplx{std::cos(2.0 * x[0]), std::sin(x[0])}; });
  const ComplexField expect = ComplexField::from_function(
      g, [](const Point& x) { return cplx{std::cos(2.0 * (x[0] - 0.3)), std::sin(x[0] - 0.3)}; });
  CHECK(sup_diff(translate(f, {0.3, 0.0, 0.0}), expect) < 1e-12);
}

TEST_CASE("trigonometric interpolation reproduces resolved modes off-grid") {
  const Grid g = cube(2, 32, 2.0 * std::numbers::pi);
  auto fn = [](const Point& x) { return std::polar(1.0, 3.0 * x[0] + 2.0 * x[1]) + cplx{std::cos(5.0 * x[1]), 0.0}; };
  const SpectralInterpolator interp(ComplexField::from_function(g, fn));
  for (const Point& x : {Point{0.123, -1.7, 0.0}, Point{2.9, 0.05, 0.0}}) CHECK(std::abs(interp(x) - fn(x)) < 1e-12);
}

TEST_CASE("polar decomposition") {
  const Grid g = line(256, 20.0);
  const ComplexField f = ComplexField::from_function(
      g, [](const Point& x) { return std::exp(-x[0] * x[0]) * std::polar(1.0, 0.7 * x[0]); });
  const PolarFields p = polar_decompose(f, 1e-300);
  CHECK(sup_diff(polar_compose(g, p), f) < 1e-14);

  SUBCASE("plane wave exp(ix): amplitude 1, phase x mod 2 pi") {
    const Grid h = line(64, 2.0 * std::numbers::pi);
    const PolarFields q =
        polar_decompose(ComplexField::from_function(h, [](const Point& x) { return std::polar(1.0, x[0]); }), 1e-12);
    for (std::size_t n = 0; n < h.size(); ++n) {
      CHECK(q.amplitude[n] == doctest::Approx(1.0));
      CHECK(std::abs(std::remainder(q.phase[n] - h.position(n)[0], 2.0 * std::numbers::pi)) < 1e-12);
    }
  }
  SUBCASE("below-floor field is degenerate") {
    CHECK_THROWS_AS(polar_decompose(ComplexField(g), 1e-12), Error);
  }
}

TEST_CASE("snapshot files round-trip bit-exactly") {
  const Grid g = cube(2, 8, 3.0);
  const ComplexField f = ComplexField::from_function(
      g, [](const Point& x) { return cplx{std::exp(-x[0] * x[0]) / 3.0, std::sin(x[1]) * 1e-17}; });
  const auto path = std::filesystem::temp_directory_path() / "hylos_snapshot_test.csv";
  write_snapshot(path, f);
  const ComplexField back = read_snapshot(path);
  CHECK(back.grid() == g);
  for (std::size_t n = 0; n < f.size(); ++n) CHECK(back[n] == f[n]);
  std::filesystem::remove(path);
}
