#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hylos/oracles.hpp"

using namespace hylos;

TEST_CASE("Newton oracle in a harmonic well") {
  const double T = 2.0 * std::numbers::pi;
  const auto path = newton_oracle({1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, ExternalPotential::harmonic(1.0), 10.0 * T, 1e-3);
  double worst = 0.0, drift = 0.0;
  for (const auto& s : path) {
    worst = std::max(worst, std::abs(s.q[0] - std::cos(s.t)));
    const double e = 0.5 * s.qdot[0] * s.qdot[0] + 0.5 * s.q[0] * s.q[0];
    drift = std::max(drift, std::abs(e - 0.5));
  }
  CHECK(worst < 1e-6);
  CHECK(drift < 1e-8);
  CHECK(path.front().t == 0.0);
  CHECK(path.back().t == doctest::Approx(10.0 * T));
  CHECK(position_at(path, T)[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Newton oracle without a potential") {
  const auto path = newton_oracle({1.0, 2.0, 0.0}, {0.5, -1.0, 0.0}, ExternalPotential::zero(), 4.0, 0.01);
  for (const auto& s : path) {
    REQUIRE(s.q[0] == doctest::Approx(1.0 + 0.5 * s.t));
    REQUIRE(s.q[1] == doctest::Approx(2.0 - s.t));
  }
  CHECK(position_at(path, 1.005)[0] == doctest::Approx(1.5025));
}

TEST_CASE("relativistic free particle") {
  CHECK(relativistic_energy({0.75, 0.0, 0.0}, 1.0) == doctest::Approx(1.25).epsilon(1e-15));
  const auto path = relativistic_oracle({0.75, 0.0, 0.0}, 1.0, 2.0, 0.01);
  CHECK(path.back().qdot[0] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(path.back().q[0] == doctest::Approx(1.2).epsilon(1e-12));
  const auto rest = relativistic_oracle({0.0, 0.0, 0.0}, 2.0, 1.0, 0.1);
  CHECK(rest.back().q[0] == 0.0);
  CHECK(rest.back().m0 == 2.0);
}
