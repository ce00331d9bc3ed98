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

NonlinearModel cubic(double a = 2.0) { return NonlinearModel::power_focusing(Equation::ns, a, 4.0, 1.0); }

const RadialProfile& sech_profile() {
  static const RadialProfile p = [] {
    GroundStateOptions o;
    o.r_max = 20.0;
    return find_ground_state(cubic(), 0.5, 1, o);
  }();
  return p;
}

NSState evolve_ns(NSState s, const NonlinearModel& m, double dt, long steps) {
  NsStepper stepper(s.psi.grid(), m, ExternalPotential::zero(), dt);
  for (long i = 0; i < steps; ++i) stepper.step(s);
  return s;
}

}  // namespace

TEST_CASE("Lorentz factor") {
  CHECK(hylos::gamma(0.0) == 1.0);
  CHECK(hylos::gamma(0.6) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(hylos::gamma(0.8) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(hylos::gamma(-0.6) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK_THROWS_AS(hylos::gamma(1.0), Error);
  const BoostedWave w = lorentz_wave_numbers(1.0, 0.6);
  CHECK(w.omega == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(w.k == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("standing wave construction") {
  const Grid g = testing::line(512, 40.0);
  const NSState a = standing_wave_ns(sech_profile(), g, {0.0, 0.0, 0.0});
  const NSState b = standing_wave_ns(sech_profile(), g, {0.0, 0.0, 0.0}, pi);
  CHECK(testing::sup_diff(a.psi, b.psi * cplx{-1.0, 0.0}) < 1e-14);
  CHECK_THROWS_AS(standing_wave_nkg(sech_profile(), g, {0.0, 0.0, 0.0}), Error);

  // Gauge rotations compose additively and commute with translations.
  const NSState r = gauge_rotate(gauge_rotate(a, 0.3), 0.4);
  CHECK(testing::sup_diff(r.psi, gauge_rotate(a, 0.7).psi) < 1e-14);
  const NSState tr = translate_state(gauge_rotate(a, 0.5), {1.5, 0.0, 0.0});
  const NSState rt = gauge_rotate(translate_state(a, {1.5, 0.0, 0.0}), 0.5);
  CHECK(testing::sup_diff(tr.psi, rt.psi) < 1e-13);
  CHECK(testing::sup_diff(gauge_shift_frequency(a, 1.0, 0.0).psi, a.psi) == 0.0);
}

TEST_CASE("standing wave returns after one period") {
  const Grid g = testing::line(512, 40.0);
  const NSState s = standing_wave_ns(sech_profile(), g, {0.0, 0.0, 0.0});
  const double period = 2.0 * pi / 0.5;
  const long steps = 20000;
  const NSState e = evolve_ns(s, cubic(), period / steps, steps);
  CHECK(testing::sup_diff(e.psi, s.psi) < 1e-6);
}

TEST_CASE("Galilean boost") {
  const Grid g = testing::line(1024, 40.0);
  const NSState s = standing_wave_ns(sech_profile(), g, {0.0, 0.0, 0.0});
  const double H = hylenic_charge_ns(s);
  const double E = energy_ns(s, cubic());
  const NSState b = galilean_boost(s, {0.3, 0.0, 0.0}, {-2.0, 0.0, 0.0});
  CHECK(std::abs(hylenic_charge_ns(b) - H) < 1e-12);
  CHECK(momentum(b)[0] == doctest::Approx(0.3 * H).epsilon(1e-9));
  CHECK(energy_ns(b, cubic()) == doctest::Approx(E + 0.5 * 0.09 * H).epsilon(1e-9));
  CHECK(barycenter(b)[0] == doctest::Approx(-2.0).epsilon(1e-9));
  const NSState still = galilean_boost(s, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0});
  CHECK(testing::sup_diff(still.psi, translate(s.psi, {1.0, 0.0, 0.0})) < 1e-14);
}

TEST_CASE("Galilean covariance of the evolution") {
  const Grid g = testing::line(512, 40.0);
  const NSState s = standing_wave_ns(sech_profile(), g, {0.0, 0.0, 0.0});
  const Point v{0.3, 0.0, 0.0};
  const double dt = 1e-3;
  NSState boosted = galilean_boost(s, v);
  NSState rest = s;
  NsStepper stepper(g, cubic(), ExternalPotential::zero(), dt);
  double worst = 0.0;
  for (int block = 0; block < 5; ++block) {
    for (int i = 0; i < 1000; ++i) {
      stepper.step(boosted);
      stepper.step(rest);
    }
    worst = std::max(worst, testing::sup_diff(boosted.psi, galilean_boost(rest, v).psi));
  }
  CHECK(rest.time == doctest::Approx(5.0));
  CHECK(worst < 1e-5);
}

TEST_CASE("frequency shift equals removing the quadratic term") {
  const Grid g = testing::line(512, 40.0);
  const NSState s = standing_wave_ns(sech_profile(), g, {0.0, 0.0, 0.0});
  const double dt = 1e-3;
  const long steps = 2000;
  const NSState with_a = evolve_ns(s, cubic(2.0), dt, steps);
  const NSState without = evolve_ns(s, cubic(0.0), dt, steps);
  const NSState shifted = gauge_shift_frequency(without, 1.0, without.time);
  CHECK(testing::sup_diff(with_a.psi, shifted.psi) < 1e-8);
}

TEST_CASE("Lorentz-boosted initial data") {
  const auto m = NonlinearModel::power_focusing(Equation::nkg, 1.5625, 4.0, 1.0);
  GroundStateOptions o;
  o.r_max = 40.0;
  const RadialProfile p = find_ground_state(m, 1.0, 1, o);
  const Grid g = testing::line(2048, 80.0);
  const KGState rest = lorentz_boost_initialdata(p, g, 1.0, 0.0);
  const KGState sw = standing_wave_nkg(p, g, {0.0, 0.0, 0.0});
  CHECK(testing::sup_diff(rest.psi, sw.psi) < 1e-14);
  CHECK(testing::sup_diff(rest.psi_t, sw.psi_t) < 1e-14);

  // At v = 0.6 the carrier is exp(0.75 i x) and the profile is squeezed by 1.25.
  const KGState b = lorentz_boost_initialdata(p, g, 1.0, 0.6);
  for (std::size_t n = 0; n < g.size(); n += 97) {
    const double x = g.position(n)[0];
    const cplx expect = p.value(std::abs(1.25 * x)) * std::polar(1.0, 0.75 * x);
    REQUIRE(std::abs(b.psi[n] - expect) < 1e-12);
  }
  CHECK_THROWS_AS(lorentz_boost_initialdata(p, g, 1.0, 1.0), Error);
}
