#include "hylos/observables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hylos/error.hpp"

namespace hylos {

namespace {

void require_tag(const NonlinearModel& model, Equation eq) {
  require(model.equation() == eq, ErrorCode::tag_mismatch,
          "model is tagged " + to_string(model.equation()) + " but a " + to_string(eq) + " observable was requested");
}

void require_same_grid(const KGState& s) {
  require(s.psi.grid() == s.psi_t.grid(), ErrorCode::invalid_argument, "psi and psi_t must share a grid");
}

double grad_sq(const std::array<ComplexField, 3>& g, int dim, std::size_t n) {
  double s = 0.0;
  for (int d = 0; d < dim; ++d) s += std::norm(g[d][n]);
  return s;
}

Point cross(const Point& a, const Point& b) {
  return Point{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Point first_moment(const Grid& g, std::span<const double> density) {
  Point m{0.0, 0.0, 0.0};
  for (std::size_t n = 0; n < g.size(); ++n) {
    const Point x = g.position(n);
    for (int d = 0; d < g.dim(); ++d) m[d] += x[d] * density[n];
  }
  const double dv = g.volume_element();
  for (auto& c : m) c *= dv;
  return m;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double Scaling::rest_energy(const NonlinearModel& model) const {
  return 0.5 * model.a() * std::pow(h, gamma_exp - alpha);
}

std::string diagnostics_header() { return "t,E,H,Px,Py,Pz,Mx,My,Mz,Lambda,qx,qy,qz,bound_mass,leakage"; }

std::string to_csv(const DiagnosticsRow& r) {
  std::string s = fmt(r.t) + "," + fmt(r.energy) + "," + fmt(r.charge);
  for (double v : r.momentum) s += "," + fmt(v);
  for (double v : r.angular_momentum) s += "," + fmt(v);
  s += "," + fmt(r.lambda);
  for (double v : r.center) s += "," + fmt(v);
  s += "," + fmt(r.bound_mass) + "," + fmt(r.leakage);
  return s;
}

RealField charge_density(const NSState& state) {
  RealField rho(state.psi.size());
  for (std::size_t n = 0; n < rho.size(); ++n) rho[n] = std::norm(state.psi[n]);
  return rho;
}

RealField charge_density(const KGState& state) {
  require_same_grid(state);
  RealField rho(state.psi.size());
  for (std::size_t n = 0; n < rho.size(); ++n) rho[n] = (state.psi_t[n] * std::conj(state.psi[n])).imag();
  return rho;
}

RealField energy_density(const NSState& state, const NonlinearModel& model, const ExternalPotential& V,
                         const Scaling& scaling) {
  require_tag(model, Equation::ns);
  const Grid& g = state.psi.grid();
  const auto grad = gradient(state.psi);
  const RealField v = V.on_grid(g);
  const double h = scaling.h;
  const double amp = std::pow(h, scaling.gamma_exp);
  const double w_scale = std::pow(h, -(scaling.alpha + scaling.gamma_exp));
  RealField rho(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double s = std::abs(state.psi[n]);
    rho[n] = 0.5 * h * h * grad_sq(grad, g.dim(), n) + w_scale * model.W(amp * s) + v[n] * s * s;
  }
  return rho;
}

RealField energy_density(const KGState& state, const NonlinearModel& model) {
  require_tag(model, Equation::nkg);
  require_same_grid(state);
  const Grid& g = state.psi.grid();
  const auto grad = gradient(state.psi);
  RealField rho(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) {
    rho[n] = 0.5 * std::norm(state.psi_t[n]) + 0.5 * grad_sq(grad, g.dim(), n) + model.W(std::abs(state.psi[n]));
  }
  return rho;
}

double energy_ns(const NSState& state, const NonlinearModel& model, const ExternalPotential& V, const Scaling& scaling) {
  return integrate(energy_density(state, model, V, scaling), state.psi.grid());
}

double energy_nkg(const KGState& state, const NonlinearModel& model) {
  return integrate(energy_density(state, model), state.psi.grid());
}

double hylenic_charge_ns(const NSState& state) { return integrate(charge_density(state), state.psi.grid()); }

double hylenic_charge_nkg(const KGState& state) { return integrate(charge_density(state), state.psi.grid()); }

Point momentum(const NSState& state, const Scaling& scaling) {
  const Grid& g = state.psi.grid();
  const auto grad = gradient(state.psi);
  Point p{0.0, 0.0, 0.0};
  for (int d = 0; d < g.dim(); ++d) {
    double s = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) s += (grad[d][n] * std::conj(state.psi[n])).imag();
    p[d] = scaling.h * s * g.volume_element();
  }
  return p;
}

Point momentum(const KGState& state) {
  require_same_grid(state);
  const Grid& g = state.psi.grid();
  const auto grad = gradient(state.psi);
  Point p{0.0, 0.0, 0.0};
  for (int d = 0; d < g.dim(); ++d) {
    double s = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) s += (state.psi_t[n] * std::conj(grad[d][n])).real();
    p[d] = -s * g.volume_element();
  }
  return p;
}

Point angular_momentum(const NSState& state, const Scaling& scaling) {
  const Grid& g = state.psi.grid();
  require(g.dim() >= 2, ErrorCode::invalid_argument, "angular momentum needs dimension >= 2");
  const auto grad = gradient(state.psi);
  Point m{0.0, 0.0, 0.0};
  for (std::size_t n = 0; n < g.size(); ++n) {
    const Point x = g.position(n);
    const cplx c = std::conj(state.psi[n]);
    const Point j{(grad[0][n] * c).imag(), (grad[1][n] * c).imag(), g.dim() > 2 ? (grad[2][n] * c).imag() : 0.0};
    const Point xj = cross(x, j);
    for (int d = 0; d < 3; ++d) m[d] += xj[d];
  }
  for (auto& c : m) c *= scaling.h * g.volume_element();
  return m;
}

Point angular_momentum(const KGState& state) {
  require_same_grid(state);
  const Grid& g = state.psi.grid();
  require(g.dim() >= 2, ErrorCode::invalid_argument, "angular momentum needs dimension >= 2");
  const auto grad = gradient(state.psi);
  Point m{0.0, 0.0, 0.0};
  for (std::size_t n = 0; n < g.size(); ++n) {
    const Point x = g.position(n);
    const cplx c = std::conj(state.psi_t[n]);
    const Point j{(grad[0][n] * c).real(), (grad[1][n] * c).real(), g.dim() > 2 ? (grad[2][n] * c).real() : 0.0};
    const Point xj = cross(x, j);
    for (int d = 0; d < 3; ++d) m[d] += xj[d];
  }
  for (auto& c : m) c *= g.volume_element();
  return m;
}

std::array<RealField, 3> charge_current(const ComplexField& psi, double h) {
  const Grid& g = psi.grid();
  const auto grad = gradient(psi);
  std::array<RealField, 3> j;
  for (int d = 0; d < g.dim(); ++d) {
    j[d].resize(g.size());
    for (std::size_t n = 0; n < g.size(); ++n) j[d][n] = h * (grad[d][n] * std::conj(psi[n])).imag();
  }
  return j;
}

double continuity_residual(const ComplexField& before, const ComplexField& after, double dt, double h) {
  require(before.grid() == after.grid(), ErrorCode::invalid_argument, "snapshots must share a grid");
  require(dt > 0.0, ErrorCode::invalid_argument, "snapshot spacing must be positive");
  const Grid& g = before.grid();
  auto j = charge_current(before, h);
  const auto j1 = charge_current(after, h);
  for (int d = 0; d < g.dim(); ++d) {
    for (std::size_t n = 0; n < g.size(); ++n) j[d][n] = 0.5 * (j[d][n] + j1[d][n]);
  }
  const RealField div = divergence(j, g);
  RealField r(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) {
    r[n] = std::abs((std::norm(after[n]) - std::norm(before[n])) / dt + div[n]);
  }
  return integrate(r, g);
}

Point barycenter(const NSState& state) {
  const auto rho = charge_density(state);
  const double H = integrate(rho, state.psi.grid());
  require(H > 0.0, ErrorCode::degenerate_input, "barycenter of a zero-charge state is undefined");
  Point q = first_moment(state.psi.grid(), rho);
  for (auto& c : q) c /= H;
  return q;
}

Point ergocenter(const KGState& state, const NonlinearModel& model) {
  const auto rho = energy_density(state, model);
  const double E = integrate(rho, state.psi.grid());
  require(E != 0.0, ErrorCode::degenerate_input, "ergocenter of a zero-energy state is undefined");
  Point q = first_moment(state.psi.grid(), rho);
  for (auto& c : q) c /= E;
  return q;
}

Point fit_velocity(std::span<const double> times, std::span<const Point> positions, std::size_t window) {
  require(times.size() == positions.size(), ErrorCode::invalid_argument, "times and positions differ in length");
  require(times.size() >= 2 && window >= 2, ErrorCode::invalid_argument, "velocity fit needs at least two samples");
  const std::size_t n = std::min(window, times.size());
  const std::size_t first = times.size() - n;
  double tm = 0.0;
  Point pm{0.0, 0.0, 0.0};
  for (std::size_t i = first; i < times.size(); ++i) {
    tm += times[i];
    for (int d = 0; d < 3; ++d) pm[d] += positions[i][d];
  }
  tm /= static_cast<double>(n);
  for (auto& c : pm) c /= static_cast<double>(n);
  double stt = 0.0;
  Point stp{0.0, 0.0, 0.0};
  for (std::size_t i = first; i < times.size(); ++i) {
    const double dt = times[i] - tm;
    stt += dt * dt;
    for (int d = 0; d < 3; ++d) stp[d] += dt * (positions[i][d] - pm[d]);
  }
  require(stt > 0.0, ErrorCode::degenerate_input, "velocity fit needs distinct times");
  for (auto& c : stp) c /= stt;
  return stp;
}

double hylomorphy_ratio(const NSState& state, const NonlinearModel& model, const ExternalPotential& V,
                        const Scaling& scaling) {
  const double H = hylenic_charge_ns(state);
  require(H != 0.0, ErrorCode::degenerate_input, "hylomorphy ratio undefined for zero charge");
  return energy_ns(state, model, V, scaling) / std::abs(H);
}

double hylomorphy_ratio(const KGState& state, const NonlinearModel& model) {
  const double H = hylenic_charge_nkg(state);
  require(H != 0.0, ErrorCode::degenerate_input, "hylomorphy ratio undefined for zero charge");
  return energy_nkg(state, model) / std::abs(H);
}

namespace {
RealField clamp_binding(const RealField& rho_h, const RealField& rho_e, double e0) {
  RealField beta(rho_h.size());
  for (std::size_t n = 0; n < beta.size(); ++n) beta[n] = std::max(0.0, e0 * std::abs(rho_h[n]) - rho_e[n]);
  return beta;
}
}  // namespace

RealField binding_energy_density(const NSState& state, const NonlinearModel& model, const ExternalPotential& V,
                                 const Scaling& scaling) {
  return clamp_binding(charge_density(state), energy_density(state, model, V, scaling), scaling.rest_energy(model));
}

RealField binding_energy_density(const KGState& state, const NonlinearModel& model) {
  return clamp_binding(charge_density(state), energy_density(state, model), model.rest_energy());
}

std::vector<char> bound_matter_region(std::span<const double> beta) {
  std::vector<char> mask(beta.size());
  for (std::size_t n = 0; n < beta.size(); ++n) mask[n] = beta[n] > 0.0;
  return mask;
}

double liapunov_value(double energy, double charge, double c_sigma, double sigma) {
  return (energy - c_sigma) * (energy - c_sigma) + (charge - sigma) * (charge - sigma);
}

double liapunov_value(const NSState& state, const NonlinearModel& model, double c_sigma, double sigma) {
  return liapunov_value(energy_ns(state, model), hylenic_charge_ns(state), c_sigma, sigma);
}

double liapunov_value(const KGState& state, const NonlinearModel& model, double c_sigma, double sigma) {
  return liapunov_value(energy_nkg(state, model), hylenic_charge_nkg(state), c_sigma, sigma);
}

double derrick_pohozaev_residual(const RadialProfile& profile, const std::function<double(double)>& G) {
  const double grad = profile.integrate([](double, double, double du) { return du * du; });
  if (grad == 0.0) return 0.0;
  const double pot = profile.integrate([&](double, double u, double) { return G(u); });
  const double coeff = 0.5 - 1.0 / static_cast<double>(profile.dim);
  return (coeff * grad + pot) / grad;
}

LocalWave local_frequency_wavenumber(std::span<const ComplexField> history, std::size_t index, double dt,
                                     double phase_floor, double h) {
  require(history.size() >= 2, ErrorCode::invalid_argument, "local frequency needs at least two snapshots");
  require(index < history.size() && dt > 0.0 && phase_floor > 0.0, ErrorCode::invalid_argument,
          "bad snapshot index, dt or phase floor");
  const std::size_t lo = index > 0 ? index - 1 : index;
  const std::size_t hi = index + 1 < history.size() ? index + 1 : index;
  const double span_t = static_cast<double>(hi - lo) * dt;
  const ComplexField& mid = history[index];
  const Grid& g = mid.grid();
  LocalWave out;
  out.omega.assign(g.size(), 0.0);
  for (auto& k : out.k) k.assign(g.size(), 0.0);
  out.valid.assign(g.size(), 0);

  const auto grad = gradient(mid);
  bool any = false;
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double a = std::abs(mid[n]);
    if (a < phase_floor || std::abs(history[lo][n]) < phase_floor || std::abs(history[hi][n]) < phase_floor) continue;
    any = true;
    out.valid[n] = 1;
    // Phase increment between neighbours, unwrapped through the product.
    const double dS = std::arg(history[hi][n] * std::conj(history[lo][n]));
    out.omega[n] = -dS / span_t / h;
    for (int d = 0; d < g.dim(); ++d) out.k[d][n] = (grad[d][n] * std::conj(mid[n])).imag() / (a * a) / h;
  }
  require(any, ErrorCode::degenerate_input, "phase undefined: amplitude below floor everywhere");
  return out;
}

DiagnosticsRow diagnose(const NSState& state, const NonlinearModel& model, const ExternalPotential& V,
                        const Scaling& scaling) {
  const Grid& g = state.psi.grid();
  DiagnosticsRow row;
  row.t = state.time;
  const auto rho_h = charge_density(state);
  const auto rho_e = energy_density(state, model, V, scaling);
  row.charge = integrate(rho_h, g);
  row.energy = integrate(rho_e, g);
  row.momentum = momentum(state, scaling);
  if (g.dim() >= 2) row.angular_momentum = angular_momentum(state, scaling);
  row.lambda = row.charge != 0.0 ? row.energy / std::abs(row.charge) : std::numeric_limits<double>::quiet_NaN();
  if (row.charge > 0.0) {
    row.center = first_moment(g, rho_h);
    for (auto& c : row.center) c /= row.charge;
  }
  row.bound_mass = integrate(clamp_binding(rho_h, rho_e, scaling.rest_energy(model)), g);
  row.leakage = state.psi.boundary_leakage();
  return row;
}

DiagnosticsRow diagnose(const KGState& state, const NonlinearModel& model) {
  const Grid& g = state.psi.grid();
  DiagnosticsRow row;
  row.t = state.time;
  const auto rho_h = charge_density(state);
  const auto rho_e = energy_density(state, model);
  row.charge = integrate(rho_h, g);
  row.energy = integrate(rho_e, g);
  row.momentum = momentum(state);
  if (g.dim() >= 2) row.angular_momentum = angular_momentum(state);
  row.lambda = row.charge != 0.0 ? row.energy / std::abs(row.charge) : std::numeric_limits<double>::quiet_NaN();
  if (row.energy != 0.0) {
    row.center = first_moment(g, rho_e);
    for (auto& c : row.center) c /= row.energy;
  }
  row.bound_mass = integrate(clamp_binding(rho_h, rho_e, model.rest_energy()), g);
  row.leakage = state.psi.boundary_leakage();
  return row;
}

}  // namespace hylos
