#include "hylos/evolve.hpp"

#include <cmath>

#include "fft.hpp"
#include "hylos/error.hpp"

namespace hylos {

std::string to_string(Scheme scheme) { return scheme == Scheme::ns_splitstep ? "ns_splitstep" : "nkg_leapfrog"; }

Scheme parse_scheme(const std::string& s) {
  if (s == "ns_splitstep") return Scheme::ns_splitstep;
  if (s == "nkg_leapfrog") return Scheme::nkg_leapfrog;
  fail(ErrorCode::config_error, "unknown scheme '" + s + "'");
}

void EvolveConfig::validate() const {
  require(std::isfinite(dt) && dt > 0.0, ErrorCode::config_error, "evolve.dt must be positive");
  require(std::isfinite(t_end) && t_end >= 0.0, ErrorCode::config_error, "evolve.t_end must be >= 0");
  require(diagnostic_every >= 1, ErrorCode::config_error, "evolve.diagnostic_every must be >= 1");
  require(snapshot_every >= 0, ErrorCode::config_error, "evolve.snapshot_every must be >= 0");
  require(blowup_factor > 1.0, ErrorCode::config_error, "blow-up factor must exceed 1");
  if (semiclassical) {
    require(scheme == Scheme::ns_splitstep, ErrorCode::config_error, "semiclassical scaling applies to NS only");
    require(semiclassical->h > 0.0, ErrorCode::config_error, "semiclassical h must be positive");
    require(semiclassical->alpha > semiclassical->gamma_exp, ErrorCode::config_error,
            "semiclassical scaling needs alpha > gamma_exp");
  }
}

long EvolveConfig::steps() const { return std::lround(t_end / dt); }

NsStepper::NsStepper(const Grid& grid, const NonlinearModel& model, const ExternalPotential& V, double dt,
                     const Scaling& scaling, double phase_floor)
    : model_(model), scaling_(scaling), dt_(dt), phase_floor_(phase_floor) {
  require(model.equation() == Equation::ns, ErrorCode::tag_mismatch, "NS stepper needs an NS model");
  require(dt > 0.0, ErrorCode::invalid_argument, "dt must be positive");
  linear_.resize(grid.size());
  const double h = scaling.h;
  detail::for_each_mode(grid, [&](std::size_t n, const Point& k, const std::array<std::size_t, 3>&) {
    const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    linear_[n] = std::polar(1.0, -0.5 * h * k2 * dt);
  });
  potential_ = V.is_zero() ? RealField(grid.size(), 0.0) : V.on_grid(grid);
}

void NsStepper::rotate(ComplexField& psi, double tau) const {
  // |psi| is invariant under this sub-flow, so the rotation is exact.
  const double h = scaling_.h;
  const double amp = std::pow(h, scaling_.gamma_exp);
  const double pref = 0.5 * std::pow(h, scaling_.gamma_exp - scaling_.alpha - 1.0);
  const double a_rate = 0.5 * model_.a() * amp * std::pow(h, -scaling_.alpha - 1.0);
  for (std::size_t n = 0; n < psi.size(); ++n) {
    const double r = std::abs(psi[n]);
    const double rate = (r < phase_floor_ ? a_rate : pref * model_.F_prime_over_s(amp * r)) + potential_[n] / h;
    psi[n] *= std::polar(1.0, -rate * tau);
  }
}

void NsStepper::step(NSState& state) const {
  rotate(state.psi, 0.5 * dt_);
  auto vals = state.psi.values();
  const Grid& g = state.psi.grid();
  detail::fft_forward(g, vals);
  for (std::size_t n = 0; n < vals.size(); ++n) vals[n] *= linear_[n];
  detail::fft_backward(g, vals);
  rotate(state.psi, 0.5 * dt_);
  state.time += dt_;
}

NkgStepper::NkgStepper(const Grid& grid, const NonlinearModel& model, double dt) : model_(model), dt_(dt) {
  require(model.equation() == Equation::nkg, ErrorCode::tag_mismatch, "NKG stepper needs an NKG model");
  require(dt > 0.0, ErrorCode::invalid_argument, "dt must be positive");
  require(dt < grid.min_spacing(), ErrorCode::invalid_argument, "CFL guard: dt must be below the grid spacing");
  // Leapfrog is stable for dt * omega_max < 2 with omega_max^2 = k_max^2 + a.
  double kmax2 = 0.0;
  for (int d = 0; d < grid.dim(); ++d) {
    const double k = M_PI / grid.spacing(d);
    kmax2 += k * k;
  }
  require(dt * std::sqrt(kmax2 + std::max(model.a(), 0.0)) < 2.0, ErrorCode::invalid_argument,
          "CFL guard: dt exceeds the leapfrog stability limit of the spectral Laplacian");
}

ComplexField NkgStepper::acceleration(const ComplexField& psi) const {
  ComplexField acc = laplacian(psi);
  for (std::size_t n = 0; n < psi.size(); ++n) acc[n] -= model_.W_prime(psi[n]);
  return acc;
}

void NkgStepper::step(KGState& state) {
  if (!have_accel_) {
    accel_ = acceleration(state.psi);
    have_accel_ = true;
  }
  const double half = 0.5 * dt_;
  for (std::size_t n = 0; n < state.psi.size(); ++n) {
    state.psi_t[n] += half * accel_[n];
    state.psi[n] += dt_ * state.psi_t[n];
  }
  accel_ = acceleration(state.psi);
  for (std::size_t n = 0; n < state.psi.size(); ++n) state.psi_t[n] += half * accel_[n];
  state.time += dt_;
}

NSState step_ns(const NSState& state, const NonlinearModel& model, const ExternalPotential& V, double dt,
                const Scaling& scaling) {
  NSState out = state;
  NsStepper(state.psi.grid(), model, V, dt, scaling).step(out);
  require(out.psi.all_finite(), ErrorCode::numerical_failure, "non-finite field after NS step");
  return out;
}

KGState step_nkg(const KGState& state, const NonlinearModel& model, double dt) {
  KGState out = state;
  NkgStepper(state.psi.grid(), model, dt).step(out);
  require(out.psi.all_finite() && out.psi_t.all_finite(), ErrorCode::numerical_failure,
          "non-finite field after NKG step");
  return out;
}

namespace {

template <class State, class Stepper, class Diagnose>
Trajectory drive(State& state, Stepper& stepper, const EvolveConfig& cfg, const Sinks& sinks, Diagnose&& diagnose) {
  Trajectory traj;
  const double t0 = state.time;
  const double peak0 = state.psi.max_abs();
  auto emit_row = [&] {
    traj.rows.push_back(diagnose(state));
    if (sinks.on_row) sinks.on_row(traj.rows.back());
  };
  auto emit_snapshot = [&] {
    if (sinks.on_snapshot) sinks.on_snapshot(state.time, state.psi);
    if (sinks.keep_snapshots) {
      traj.snapshot_times.push_back(state.time);
      traj.snapshots.push_back(state.psi);
    }
  };
  emit_row();
  if (cfg.snapshot_every > 0) emit_snapshot();
  const long n = cfg.steps();
  for (long i = 1; i <= n; ++i) {
    stepper.step(state);
    state.time = t0 + static_cast<double>(i) * cfg.dt;
    const double peak = state.psi.max_abs();
    if (!std::isfinite(peak) || peak > cfg.blowup_factor * peak0) {
      traj.aborted = true;
      traj.reason = !std::isfinite(peak) ? "non-finite field at t = " + std::to_string(state.time)
                                         : "blow-up guard tripped at t = " + std::to_string(state.time);
      return traj;
    }
    if (i % cfg.diagnostic_every == 0 || i == n) emit_row();
    if (cfg.snapshot_every > 0 && i % cfg.snapshot_every == 0) emit_snapshot();
  }
  return traj;
}

}  // namespace

Trajectory run(NSState state, const NonlinearModel& model, const ExternalPotential& V, const EvolveConfig& cfg,
               const Sinks& sinks, NSState* final_state) {
  cfg.validate();
  require(cfg.scheme == Scheme::ns_splitstep, ErrorCode::config_error, "NS state needs scheme ns_splitstep");
  require(model.equation() == Equation::ns, ErrorCode::tag_mismatch, "NS state needs an NS model");
  const Scaling scaling = cfg.semiclassical.value_or(Scaling{});
  NsStepper stepper(state.psi.grid(), model, V, cfg.dt, scaling, cfg.phase_floor);
  Trajectory traj =
      drive(state, stepper, cfg, sinks, [&](const NSState& s) { return diagnose(s, model, V, scaling); });
  if (final_state) *final_state = std::move(state);
  return traj;
}

Trajectory run(KGState state, const NonlinearModel& model, const EvolveConfig& cfg, const Sinks& sinks,
               KGState* final_state) {
  cfg.validate();
  require(cfg.scheme == Scheme::nkg_leapfrog, ErrorCode::config_error, "KG state needs scheme nkg_leapfrog");
  require(model.equation() == Equation::nkg, ErrorCode::tag_mismatch, "KG state needs an NKG model");
  NkgStepper stepper(state.psi.grid(), model, cfg.dt);
  Trajectory traj = drive(state, stepper, cfg, sinks, [&](const KGState& s) { return diagnose(s, model); });
  if (final_state) *final_state = std::move(state);
  return traj;
}

}  // namespace hylos
