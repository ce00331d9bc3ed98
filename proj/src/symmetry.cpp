#include "hylos/symmetry.hpp"

#include <cmath>

#include "hylos/error.hpp"
#include "hylos/groundstate.hpp"

namespace hylos {

double gamma(double v) {
  require(std::isfinite(v) && std::abs(v) < 1.0, ErrorCode::invalid_argument, "Lorentz boost needs |v| < 1");
  return 1.0 / std::sqrt(1.0 - v * v);
}

NSState standing_wave_ns(const RadialProfile& profile, const Grid& grid, const Point& x0, double theta) {
  require(profile.equation == Equation::ns, ErrorCode::tag_mismatch, "standing_wave_ns needs an NS profile");
  NSState s{profile_to_field(profile, grid, x0), 0.0};
  s.psi *= std::polar(1.0, theta);
  return s;
}

KGState standing_wave_nkg(const RadialProfile& profile, const Grid& grid, const Point& x0, double theta) {
  require(profile.equation == Equation::nkg, ErrorCode::tag_mismatch, "standing_wave_nkg needs an NKG profile");
  KGState s;
  s.psi = profile_to_field(profile, grid, x0);
  s.psi *= std::polar(1.0, theta);
  s.psi_t = s.psi * cplx{0.0, -profile.omega};
  return s;
}

NSState galilean_boost(const NSState& state, const Point& v, const Point& x0) {
  const double t = state.time;
  const Grid& g = state.psi.grid();
  Point shift{0.0, 0.0, 0.0};
  double v2 = 0.0;
  for (int d = 0; d < g.dim(); ++d) {
    shift[d] = x0[d] + v[d] * t;
    v2 += v[d] * v[d];
  }
  NSState out{translate(state.psi, shift), t};
  for (std::size_t n = 0; n < g.size(); ++n) {
    const Point x = g.position(n);
    double vx = 0.0;
    for (int d = 0; d < g.dim(); ++d) vx += v[d] * x[d];
    out.psi[n] *= std::polar(1.0, vx - 0.5 * v2 * t);
  }
  return out;
}

BoostedWave lorentz_wave_numbers(double omega0, double v) {
  const double g = gamma(v);
  return {g * omega0, g * omega0 * v};
}

KGState lorentz_boost_initialdata(const RadialProfile& profile, const Grid& grid, double omega0, double v,
                                  const Point& x0, double theta) {
  require(profile.equation == Equation::nkg, ErrorCode::tag_mismatch, "Lorentz boost needs an NKG profile");
  const double g = gamma(v);
  const auto [omega, k] = lorentz_wave_numbers(omega0, v);
  KGState s;
  s.psi = ComplexField(grid);
  s.psi_t = ComplexField(grid);
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const Point x = grid.position(n);
    Point xi{0.0, 0.0, 0.0};
    double rho2 = 0.0;
    for (int d = 0; d < grid.dim(); ++d) {
      xi[d] = (d == 0 ? g : 1.0) * (x[d] - x0[d]);
      rho2 += xi[d] * xi[d];
    }
    const double rho = std::sqrt(rho2);
    const double u = profile.value(rho);
    // d/dxi_1 of u(|xi|); the t-derivative of u(gamma(x1 - vt)) is -gamma v times this.
    const double du1 = rho > 0.0 ? profile.slope(rho) * xi[0] / rho : 0.0;
    const cplx carrier = std::polar(1.0, k * x[0] + theta);
    s.psi[n] = u * carrier;
    s.psi_t[n] = cplx{-g * v * du1, -omega * u} * carrier;
  }
  require(s.psi.boundary_leakage() <= 1e-8, ErrorCode::invalid_argument, "boosted profile tail too fat for box");
  return s;
}

NSState gauge_shift_frequency(const NSState& state, double E0, double t) {
  NSState out = state;
  out.psi *= std::polar(1.0, -E0 * t);
  return out;
}

NSState gauge_rotate(const NSState& state, double theta) {
  NSState out = state;
  out.psi *= std::polar(1.0, theta);
  return out;
}

KGState gauge_rotate(const KGState& state, double theta) {
  KGState out = state;
  out.psi *= std::polar(1.0, theta);
  out.psi_t *= std::polar(1.0, theta);
  return out;
}

NSState translate_state(const NSState& state, const Point& shift) { return {translate(state.psi, shift), state.time}; }

KGState translate_state(const KGState& state, const Point& shift) {
  return {translate(state.psi, shift), translate(state.psi_t, shift), state.time};
}

}  // namespace hylos
