#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hylos/grid.hpp"

namespace hylos {

enum class Equation { ns, nkg };
enum class Family { power_focusing, double_power, saturating_intro };

std::string to_string(Equation eq);
std::string to_string(Family family);
Equation parse_equation(const std::string& s);
Family parse_family(const std::string& s);

/// W(s) = a s^2 / 2 + N(s) for s = |psi|, with N(0) = N'(0) = 0.
///
/// power_focusing:   N = -(c_p/p) s^p
/// double_power:     N = -(c_p/p) s^p + (c_q/q) s^q, q > p
/// saturating_intro: W'(s) = a s/(1+s), i.e. W = a (s - ln(1+s))
///
/// For NS, E0 = a/2; for NKG, a = m^2 and E0 = m.
class NonlinearModel {
 public:
  static NonlinearModel power_focusing(Equation eq, double a, double p, double c);
  static NonlinearModel double_power(Equation eq, double a, double p, double q, double c_p, double c_q);
  static NonlinearModel saturating_intro(Equation eq, double a);

  Equation equation() const { return equation_; }
  Family family() const { return family_; }
  double a() const { return a_; }
  double p() const { return p_; }
  double q() const { return q_; }
  double c_p() const { return c_p_; }
  double c_q() const { return c_q_; }

  double N(double s) const;
  double N_prime(double s) const;
  double W(double s) const;
  /// F'(s) = dW/ds for s >= 0.
  double F_prime(double s) const;
  /// F'(s)/s with its s -> 0 limit a.
  double F_prime_over_s(double s) const;
  /// Gauge-equivariant derivative W'(z) = F'(|z|) z/|z|.
  cplx W_prime(cplx z) const;
  double rest_energy() const;

  /// Throws unless W(s) >= 0 on [0, s_max] (sampled with the given step).
  void require_positive(double s_max = 10.0, double step = 1e-3) const;

 private:
  NonlinearModel() = default;
  void validate() const;

  Equation equation_ = Equation::ns;
  Family family_ = Family::power_focusing;
  double a_ = 0.0, p_ = 4.0, q_ = 6.0, c_p_ = 0.0, c_q_ = 0.0;
};

double eval_W(const NonlinearModel& model, double s);
cplx eval_Wprime_complex(const NonlinearModel& model, cplx z);
double rest_energy(const NonlinearModel& model);

/// Scans s in (0, s_max] for N(s) < 0; returns the first such s if any.
std::optional<double> hylomorphy_witness(const NonlinearModel& model, double s_max = 10.0, double step = 1e-3);

struct ZeroPotential {};
struct HarmonicPotential {
  double kappa = 1.0;
};
struct SampledPotential {
  Grid grid;
  RealField values;
};

/// External potential V(x) >= 0.
class ExternalPotential {
 public:
  ExternalPotential() = default;
  static ExternalPotential zero() { return ExternalPotential(); }
  static ExternalPotential harmonic(double kappa);
  static ExternalPotential sampled(const Grid& grid, RealField values);

  bool is_zero() const { return std::holds_alternative<ZeroPotential>(kind_); }
  double value(const Point& x) const;
  Point gradient(const Point& x) const;
  /// Node values on a grid (sampled kind must share the grid).
  RealField on_grid(const Grid& grid) const;
  const std::variant<ZeroPotential, HarmonicPotential, SampledPotential>& kind() const { return kind_; }

 private:
  double sampled_value(const SampledPotential& s, Point x) const;
  std::variant<ZeroPotential, HarmonicPotential, SampledPotential> kind_;
};

double eval_potential(const ExternalPotential& V, const Point& x);
Point eval_potential_grad(const ExternalPotential& V, const Point& x);

}  // namespace hylos
