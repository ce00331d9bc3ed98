#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hylos/grid.hpp"
#include "hylos/models.hpp"
#include "hylos/profile.hpp"

namespace hylos {

struct NSState {
  ComplexField psi;
  double time = 0.0;
};

struct KGState {
  ComplexField psi;
  ComplexField psi_t;
  double time = 0.0;
};

/// Semiclassical scaling i h psi_t = -(h^2/2) lap psi + W'(h^g psi)/(2 h^alpha) + V psi.
/// The identity scaling (h = 1, alpha = gamma_exp = 0) is the plain NS equation.
struct Scaling {
  double h = 1.0;
  double alpha = 0.0;
  double gamma_exp = 0.0;

  double beta() const { return 1.0 + 0.5 * (alpha - gamma_exp); }
  bool is_identity() const { return h == 1.0 && alpha == 0.0 && gamma_exp == 0.0; }
  /// Rest energy a/2 rescaled to h^(gamma-alpha) a/2.
  double rest_energy(const NonlinearModel& model) const;
};

struct DiagnosticsRow {
  double t = 0.0;
  double energy = 0.0;
  double charge = 0.0;
  Point momentum{0.0, 0.0, 0.0};
  Point angular_momentum{0.0, 0.0, 0.0};
  double lambda = 0.0;  ///< NaN when the charge vanishes
  Point center{0.0, 0.0, 0.0};  ///< barycenter (NS) or ergocenter (NKG)
  double bound_mass = 0.0;
  double leakage = 0.0;
};

std::string diagnostics_header();
std::string to_csv(const DiagnosticsRow& row);

RealField charge_density(const NSState& state);
RealField charge_density(const KGState& state);
RealField energy_density(const NSState& state, const NonlinearModel& model, const ExternalPotential& V = {},
                         const Scaling& scaling = {});
RealField energy_density(const KGState& state, const NonlinearModel& model);

double energy_ns(const NSState& state, const NonlinearModel& model, const ExternalPotential& V = {},
                 const Scaling& scaling = {});
double energy_nkg(const KGState& state, const NonlinearModel& model);

double hylenic_charge_ns(const NSState& state);
/// Signed: Im integral of psi_t conj(psi).
double hylenic_charge_nkg(const KGState& state);

Point momentum(const NSState& state, const Scaling& scaling = {});
Point momentum(const KGState& state);
Point angular_momentum(const NSState& state, const Scaling& scaling = {});
Point angular_momentum(const KGState& state);

Point barycenter(const NSState& state);
Point ergocenter(const KGState& state, const NonlinearModel& model);
/// Least-squares slope of positions against times over the last `window` samples.
Point fit_velocity(std::span<const double> times, std::span<const Point> positions, std::size_t window = 50);

double hylomorphy_ratio(const NSState& state, const NonlinearModel& model, const ExternalPotential& V = {},
                        const Scaling& scaling = {});
double hylomorphy_ratio(const KGState& state, const NonlinearModel& model);

RealField binding_energy_density(const NSState& state, const NonlinearModel& model, const ExternalPotential& V = {},
                                 const Scaling& scaling = {});
RealField binding_energy_density(const KGState& state, const NonlinearModel& model);
std::vector<char> bound_matter_region(std::span<const double> beta);

double liapunov_value(double energy, double charge, double c_sigma, double sigma);
double liapunov_value(const NSState& state, const NonlinearModel& model, double c_sigma, double sigma);
double liapunov_value(const KGState& state, const NonlinearModel& model, double c_sigma, double sigma);

/// Current h Im(conj(psi) grad psi) = h u^2 grad S of an NS field, per axis.
std::array<RealField, 3> charge_current(const ComplexField& psi, double h = 1.0);
/// Integral of |d_t u^2 + div(u^2 grad S)| between two NS snapshots dt apart
/// (forward difference in time, current averaged over the two ends).
double continuity_residual(const ComplexField& before, const ComplexField& after, double dt, double h = 1.0);

/// ((1/2 - 1/N) int |grad u|^2 + int G(u)) / int |grad u|^2 over R^N.
double derrick_pohozaev_residual(const RadialProfile& profile, const std::function<double(double)>& G);

struct LocalWave {
  RealField omega;                 ///< -dS/dt / h
  std::array<RealField, 3> k;      ///< grad S / h
  std::vector<char> valid;         ///< amplitude above the phase floor
};

/// De Broglie local frequency and wavenumber at snapshot `index` of a history
/// with uniform spacing dt (centered difference when both neighbours exist).
LocalWave local_frequency_wavenumber(std::span<const ComplexField> history, std::size_t index, double dt,
                                     double phase_floor, double h = 1.0);

DiagnosticsRow diagnose(const NSState& state, const NonlinearModel& model, const ExternalPotential& V = {},
                        const Scaling& scaling = {});
DiagnosticsRow diagnose(const KGState& state, const NonlinearModel& model);

}  // namespace hylos
