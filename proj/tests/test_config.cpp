#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "hylos/config.hpp"
#include "hylos/error.hpp"
#include "hylos/lab.hpp"

using namespace hylos;

namespace {

int code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return static_cast<int>(e.code());
  }
  return 0;
}

}  // namespace

TEST_CASE("parsing and defaults") {
  const Config c = Config::parse(
      "# comment\n"
      "grid.dim = 2   # trailing\n"
      "\n"
      "model.equation = nkg\n"
      "boost.center = -3, 1.5\n");
  CHECK(c.integer("grid.dim") == 2);
  CHECK(c.text("model.equation") == "nkg");
  CHECK(c.real("grid.L") == 40.0);
  CHECK(c.reals("scan.R").size() == 4);
  const Point p = c.point("boost.center");
  CHECK(p[0] == -3.0);
  CHECK(p[1] == 1.5);
  CHECK(c.has("grid.dim"));
  CHECK_FALSE(c.has("grid.n"));
}

TEST_CASE("rejections are config errors") {
  const int cfg = static_cast<int>(ErrorCode::config_error);
  CHECK(code_of([] { Config::parse("model.colour = red\n"); }) == cfg);
  CHECK(code_of([] { Config::parse("grid.dim = 1\ngrid.dim = 2\n"); }) == cfg);
  CHECK(code_of([] { Config::parse("grid.dim\n"); }) == cfg);
  CHECK(code_of([] { Config::parse("grid.dim = two\n"); }) == cfg);
  CHECK(code_of([] { Config::parse("grid.L = 1.5x\n"); }) == cfg);
  CHECK(code_of([] { Config::parse("model.equation = kdv\n"); }) == cfg);
  try {
    Config::parse("grid.dim = 1\nbogus.key = 3\n", "a.cfg");
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("a.cfg:2") != std::string::npos);
  }
  CHECK(code_of([] { Config::load("/nonexistent/hylos.cfg"); }) == static_cast<int>(ErrorCode::io_error));
}

TEST_CASE("hash is stable and sensitive") {
  const Config a = Config::parse("grid.n = 512\n");
  Config b = Config::parse("grid.n=512   # same value\n");
  CHECK(a.hash() == b.hash());
  CHECK(a.hash().size() == 16);
  // Explicitly restating a default does not change the resolved configuration.
  CHECK(Config::parse("grid.L = 40\n").hash() == Config::parse("").hash());
  b.set("grid.n", "1024");
  CHECK(a.hash() != b.hash());
  // FNV-1a 64-bit reference values.
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("file round trip and validation") {
  const auto path = std::filesystem::temp_directory_path() / "hylos_config_test.cfg";
  {
    std::ofstream out(path);
    out << "model.family = double_power\nmodel.c_q = 0.25\n";
  }
  const Config c = Config::load(path);
  std::filesystem::remove(path);
  CHECK(model_from_config(c).family() == Family::double_power);
  CHECK_NOTHROW(validate_config(c));
  CHECK_THROWS_AS(validate_config(Config::parse("grid.n = 4\n")), Error);
  CHECK_THROWS_AS(validate_config(Config::parse("evolve.dt = -1\n")), Error);
}

TEST_CASE("builders") {
  const Config c = Config::parse("grid.dim = 2\ngrid.n = 32\ngrid.L = 10\npotential.kind = harmonic\n");
  const Grid g = grid_from_config(c);
  CHECK(g.dim() == 2);
  CHECK(g.size() == 1024);
  CHECK(potential_from_config(c).value({1.0, 1.0, 0.0}) == doctest::Approx(1.0));
  const EvolveConfig e = evolve_from_config(Config::parse("model.equation = nkg\n"));
  CHECK(e.scheme == Scheme::nkg_leapfrog);
  CHECK(experiment_names().size() == 6);
}
