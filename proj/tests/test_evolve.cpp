#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "hylos/error.hpp"
#include "hylos/evolve.hpp"
#include "hylos/groundstate.hpp"
#include "hylos/symmetry.hpp"

using namespace hylos;

namespace {

constexpr double pi = std::numbers::pi;

NonlinearModel cubic() { return NonlinearModel::power_focusing(Equation::ns, 2.0, 4.0, 1.0); }

Grid ring(std::size_t n = 64) {
  const double l[] = {2.0 * pi};
  const std::size_t c[] = {n};
  return Grid::make(1, l, c);
}

const RadialProfile& sech_profile() {
  static const RadialProfile p = [] {
    GroundStateOptions o;
    o.r_max = 20.0;
    return find_ground_state(cubic(), 0.5, 1, o);
  }();
  return p;
}

// Free KG plane wave exp(i(x - omega t)) with omega^2 = 1 + a; returns the sup error at t_end.
double kg_plane_wave_error(double dt, double t_end) {
  const auto m = NonlinearModel::power_focusing(Equation::nkg, 1.0, 4.0, 0.0);
  const double w = std::sqrt(2.0);
  const Grid g = ring();
  KGState s{ComplexField::from_function(g, [](const Point& x) { return std::polar(1.0, x[0]); }),
            ComplexField::from_function(g, [&](const Point& x) { return cplx{0.0, -w} * std::polar(1.0, x[0]); })};
  NkgStepper stepper(g, m, dt);
  const long steps = std::lround(t_end / dt);
  for (long i = 0; i < steps; ++i) stepper.step(s);
  const auto exact = ComplexField::from_function(g, [&](const Point& x) { return std::polar(1.0, x[0] - w * s.time); });
  return testing::sup_diff(s.psi, exact);
}

}  // namespace

TEST_CASE("scheme names") {
  CHECK(parse_scheme("nkg_leapfrog") == Scheme::nkg_leapfrog);
  CHECK(to_string(Scheme::ns_splitstep) == "ns_splitstep");
  CHECK_THROWS_AS(parse_scheme("euler"), Error);
}

TEST_CASE("NS free plane wave is propagated exactly") {
  const auto m = NonlinearModel::power_focusing(Equation::ns, 2.0, 4.0, 0.0);
  const Grid g = ring();
  NSState s{ComplexField::from_function(g, [](const Point& x) { return std::polar(1.0, 3.0 * x[0]); })};
  NsStepper stepper(g, m, ExternalPotential::zero(), 0.01);
  for (int i = 0; i < 1000; ++i) stepper.step(s);
  // omega = k^2/2 + a/2.
  const auto exact = ComplexField::from_function(g, [&](const Point& x) { return std::polar(1.0, 3.0 * x[0] - 5.5 * s.time); });
  CHECK(s.time == doctest::Approx(10.0));
  CHECK(testing::sup_diff(s.psi, exact) < 1e-11);
}

TEST_CASE("KG plane wave and second-order convergence") {
  CHECK(kg_plane_wave_error(1e-3, 10.0) < 1e-5);
  const double e1 = kg_plane_wave_error(0.02, 10.0);
  const double e2 = kg_plane_wave_error(0.01, 10.0);
  CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("NS standing wave and charge conservation") {
  const Grid g = testing::line(512, 40.0);
  const NSState s0 = standing_wave_ns(sech_profile(), g, {0.0, 0.0, 0.0});
  NSState s = s0;
  NsStepper stepper(g, cubic(), ExternalPotential::zero(), 1e-3);
  for (int i = 0; i < 1000; ++i) stepper.step(s);
  CHECK(testing::sup_diff(s.psi, s0.psi * std::polar(1.0, -0.5 * s.time)) < 1e-5);

  const double H0 = hylenic_charge_ns(s0);
  for (int i = 0; i < 9000; ++i) stepper.step(s);
  CHECK(std::abs(hylenic_charge_ns(s) - H0) / H0 < 1e-12);
}

TEST_CASE("NKG CFL guard") {
  const auto m = NonlinearModel::power_focusing(Equation::nkg, 1.0, 4.0, 1.0);
  const Grid g = testing::line(1024, 40.0);
  CHECK_THROWS_AS(NkgStepper(g, m, 0.05), Error);
  CHECK_NOTHROW(NkgStepper(g, m, 0.01));
  CHECK_THROWS_AS(NkgStepper(g, cubic(), 0.01), Error);
}

TEST_CASE("trajectory driver") {
  const Grid g = testing::line(256, 40.0);
  const NSState s0 = standing_wave_ns(sech_profile(), g, {0.0, 0.0, 0.0});
  EvolveConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_end = 0.0;
  const Trajectory empty = run(s0, cubic(), ExternalPotential::zero(), cfg);
  CHECK(empty.rows.size() == 1);
  CHECK(!empty.aborted);

  cfg.t_end = 1.0;
  cfg.diagnostic_every = 10;
  cfg.snapshot_every = 25;
  NSState last;
  const Trajectory a = run(s0, cubic(), ExternalPotential::zero(), cfg, {}, &last);
  const Trajectory b = run(s0, cubic(), ExternalPotential::zero(), cfg);
  CHECK(a.rows.size() == 11);
  CHECK(a.snapshots.size() == 5);
  CHECK(a.rows.back().t == doctest::Approx(1.0));
  CHECK(last.time == doctest::Approx(1.0));
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].energy == b.rows[i].energy);
    CHECK(a.rows[i].charge == b.rows[i].charge);
  }
  CHECK(testing::sup_diff(a.snapshots.back(), b.snapshots.back()) == 0.0);

  cfg.scheme = Scheme::nkg_leapfrog;
  CHECK_THROWS_AS(run(s0, cubic(), ExternalPotential::zero(), cfg), Error);
  cfg.scheme = Scheme::ns_splitstep;
  cfg.dt = -1.0;
  CHECK_THROWS_AS(run(s0, cubic(), ExternalPotential::zero(), cfg), Error);
}

TEST_CASE("blow-up guard aborts") {
  // Mass-supercritical focusing in 1D: the bump self-focuses and its peak grows past 1.5x.
  const auto m = NonlinearModel::power_focusing(Equation::ns, 0.0, 8.0, 1.0);
  const Grid g = testing::line(1024, 20.0);
  NSState s{ComplexField::from_function(g, [](const Point& x) { return cplx{3.0 * std::exp(-x[0] * x[0]), 0.0}; })};
  EvolveConfig cfg;
  cfg.dt = 1e-4;
  cfg.t_end = 0.5;
  cfg.blowup_factor = 1.5;
  const Trajectory t = run(s, m, ExternalPotential::zero(), cfg);
  CHECK(t.aborted);
  CHECK(t.reason.find("blow-up") != std::string::npos);
  CHECK(t.rows.back().t < 0.5);
}
