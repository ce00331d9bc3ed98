#pragma once

#include "hylos/grid.hpp"
#include "hylos/observables.hpp"
#include "hylos/profile.hpp"

namespace hylos {

struct BoostSpec {
  Point v{0.0, 0.0, 0.0};
  double omega0 = 0.0;
  Point x0{0.0, 0.0, 0.0};
  double theta = 0.0;
};

/// Lorentz factor 1/sqrt(1 - v^2); throws for |v| >= 1.
double gamma(double v);

NSState standing_wave_ns(const RadialProfile& profile, const Grid& grid, const Point& x0, double theta = 0.0);
/// (u e^{i theta}, -i omega u e^{i theta}).
KGState standing_wave_nkg(const RadialProfile& profile, const Grid& grid, const Point& x0, double theta = 0.0);

/// psi(t, x - x0 - v t) exp(i(v.x - v^2 t / 2)) evaluated at the state's time.
NSState galilean_boost(const NSState& state, const Point& v, const Point& x0 = {0.0, 0.0, 0.0});

/// Boosted standing wave along axis 1 at t = 0: omega = gamma omega0, k = gamma omega0 v.
KGState lorentz_boost_initialdata(const RadialProfile& profile, const Grid& grid, double omega0, double v,
                                  const Point& x0 = {0.0, 0.0, 0.0}, double theta = 0.0);

struct BoostedWave {
  double omega;
  double k;
};
BoostedWave lorentz_wave_numbers(double omega0, double v);

/// psi e^{-i E0 t}.
NSState gauge_shift_frequency(const NSState& state, double E0, double t);
NSState gauge_rotate(const NSState& state, double theta);
KGState gauge_rotate(const KGState& state, double theta);
NSState translate_state(const NSState& state, const Point& shift);
KGState translate_state(const KGState& state, const Point& shift);

}  // namespace hylos
