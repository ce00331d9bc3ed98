#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "helpers.hpp"
#include "hylos/error.hpp"
#include "hylos/groundstate.hpp"
#include "hylos/io.hpp"
#include "hylos/observables.hpp"

using namespace hylos;

namespace {

// Cubic focusing NS: W = s^2 - s^4/4 (a = 2, p = 4). At omega = 1/2 the static
// equation is u'' = u - u^3, solved by sqrt(2) sech r with integral of u^2 equal to 4.
NonlinearModel cubic() { return NonlinearModel::power_focusing(Equation::ns, 2.0, 4.0, 1.0); }

double sech_oracle(double r) { return std::sqrt(2.0) / std::cosh(r); }

int code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return static_cast<int>(e.code());
  }
  return 0;
}

}  // namespace

TEST_CASE("effective G") {
  const auto ns = effective_G(cubic(), 0.5);
  CHECK(ns.G(1.0) == doctest::Approx(0.25));
  CHECK(ns.dG(1.0) == doctest::Approx(0.0).scale(1.0));
  const auto kg = effective_G(NonlinearModel::power_focusing(Equation::nkg, 1.0, 4.0, 1.0), 0.6);
  CHECK(kg.G(1.0) == doctest::Approx(0.5 - 0.25 - 0.18));
}

TEST_CASE("shot classification") {
  const auto g = effective_G(cubic(), 0.5);
  CHECK(shoot(g.dG, 1, 1.2, 1e-3, 20.0, g.G).outcome == ShotOutcome::undershoot);
  const Shot over = shoot(g.dG, 1, 2.0, 1e-3, 20.0, g.G);
  CHECK(over.outcome == ShotOutcome::overshoot);
  CHECK(over.event_index < over.r.size());
  CHECK_THROWS_AS(shoot(g.dG, 1, -1.0, 1e-3, 20.0), Error);
  CHECK(to_string(ShotOutcome::converged) == "converged");
}

TEST_CASE("1D ground state matches the sech oracle") {
  const RadialProfile p = find_ground_state(cubic(), 0.5, 1);
  CHECK(std::abs(p.u0 - std::sqrt(2.0)) < 1e-5);
  double sup = 0.0;
  for (std::size_t i = 0; i < p.r.size(); ++i) sup = std::max(sup, std::abs(p.u[i] - sech_oracle(p.r[i])));
  CHECK(sup < 1e-5);
  CHECK(p.sigma == doctest::Approx(4.0).epsilon(1e-5));
  CHECK(std::abs(derrick_pohozaev_residual(p, effective_G(cubic(), 0.5).G)) < 1e-6);

  // Tail is clamped to zero past the last trusted node.
  CHECK(p.u.back() < 1e-8 * p.u0);
  CHECK(p.value(p.r_max() + 1.0) == 0.0);
  CHECK(p.value(0.3) == doctest::Approx(sech_oracle(0.3)).epsilon(1e-6));
  CHECK(p.slope(0.3) == doctest::Approx(-sech_oracle(0.3) * std::tanh(0.3)).epsilon(1e-4));

  // The embedded field carries the same charge.
  const Grid grid = testing::line(1024, 40.0);
  const ComplexField f = profile_to_field(p, grid, {0.0, 0.0, 0.0});
  RealField rho(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) rho[n] = std::norm(f[n]);
  CHECK(std::abs(integrate(rho, grid) - p.sigma) < 1e-4);

  // A box too small for the tail is refused.
  CHECK_THROWS_AS(profile_to_field(p, testing::line(256, 10.0), {0.0, 0.0, 0.0}), Error);
}

TEST_CASE("3D ground state is stable under radial refinement") {
  GroundStateOptions coarse;
  coarse.r_max = 20.0;
  GroundStateOptions fine = coarse;
  fine.h_r = 0.5 * coarse.h_r;
  const RadialProfile a = find_ground_state(cubic(), 0.5, 3, coarse);
  const RadialProfile b = find_ground_state(cubic(), 0.5, 3, fine);
  CHECK(std::abs(a.u0 - b.u0) < 1e-5);
  CHECK(std::abs(derrick_pohozaev_residual(a, effective_G(cubic(), 0.5).G)) < 1e-3);
  for (std::size_t i = 1; i < a.r.size(); ++i) {
    if (a.u[i] == 0.0) break;
    REQUIRE(a.u[i] < a.u[i - 1]);
  }
}

TEST_CASE("frequencies outside the admissible interval have no bracket") {
  GroundStateOptions opts;
  opts.r_max = 20.0;
  opts.u0_max = 10.0;
  // omega = E0 = a/2.
  CHECK(code_of([&] { find_ground_state(cubic(), 1.0, 1, opts); }) ==
        static_cast<int>(ErrorCode::bracket_not_found));
}

TEST_CASE("profile file round trip") {
  GroundStateOptions opts;
  opts.r_max = 20.0;
  const RadialProfile p = find_ground_state(cubic(), 0.5, 1, opts);
  const auto path = std::filesystem::temp_directory_path() / "hylos_profile_roundtrip.csv";
  write_profile(path, p);
  const RadialProfile q = read_profile(path);
  std::filesystem::remove(path);
  CHECK(q.dim == p.dim);
  CHECK(q.omega == p.omega);
  CHECK(q.equation == p.equation);
  CHECK(q.u0 == p.u0);
  CHECK(q.sigma == p.sigma);
  REQUIRE(q.u.size() == p.u.size());
  for (std::size_t i = 0; i < p.u.size(); ++i) REQUIRE(q.u[i] == p.u[i]);
}
