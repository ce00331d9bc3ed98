#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hylos/grid.hpp"
#include "hylos/models.hpp"
#include "hylos/observables.hpp"

namespace hylos {

enum class Scheme { ns_splitstep, nkg_leapfrog };
std::string to_string(Scheme scheme);
Scheme parse_scheme(const std::string& s);

struct EvolveConfig {
  double dt = 1e-3;
  double t_end = 0.0;
  int snapshot_every = 0;    ///< 0 disables snapshots
  int diagnostic_every = 1;
  Scheme scheme = Scheme::ns_splitstep;
  std::optional<Scaling> semiclassical;
  double blowup_factor = 1e6;
  double phase_floor = 1e-12;

  void validate() const;
  long steps() const;
};

struct Trajectory {
  std::vector<DiagnosticsRow> rows;
  std::vector<double> snapshot_times;
  std::vector<ComplexField> snapshots;
  bool aborted = false;
  std::string reason;
};

struct Sinks {
  std::function<void(const DiagnosticsRow&)> on_row;
  std::function<void(double, const ComplexField&)> on_snapshot;
  bool keep_snapshots = true;
};

/// Strang splitting: half nonlinear+potential phase rotation, exact free flow,
/// half rotation. Precomputes the linear multiplier and the potential.
class NsStepper {
 public:
  NsStepper(const Grid& grid, const NonlinearModel& model, const ExternalPotential& V, double dt,
            const Scaling& scaling = {}, double phase_floor = 1e-12);
  void step(NSState& state) const;

 private:
  void rotate(ComplexField& psi, double tau) const;

  NonlinearModel model_;
  Scaling scaling_;
  double dt_;
  double phase_floor_;
  std::vector<cplx> linear_;
  RealField potential_;
};

/// Velocity Verlet on psi_tt = lap psi - W'(psi); caches the acceleration.
class NkgStepper {
 public:
  NkgStepper(const Grid& grid, const NonlinearModel& model, double dt);
  void step(KGState& state);

 private:
  ComplexField acceleration(const ComplexField& psi) const;

  NonlinearModel model_;
  double dt_;
  ComplexField accel_;
  bool have_accel_ = false;
};

NSState step_ns(const NSState& state, const NonlinearModel& model, const ExternalPotential& V, double dt,
                const Scaling& scaling = {});
KGState step_nkg(const KGState& state, const NonlinearModel& model, double dt);

Trajectory run(NSState state, const NonlinearModel& model, const ExternalPotential& V, const EvolveConfig& cfg,
               const Sinks& sinks = {}, NSState* final_state = nullptr);
Trajectory run(KGState state, const NonlinearModel& model, const EvolveConfig& cfg, const Sinks& sinks = {},
               KGState* final_state = nullptr);

}  // namespace hylos
