#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hylos/grid.hpp"
#include "hylos/models.hpp"
#include "hylos/profile.hpp"

namespace hylos {

/// G and G' for the static problem -lap u + G'(u) = 0 at frequency omega.
/// NS: G = W - omega s^2.  NKG: G = W - omega^2 s^2 / 2.
struct EffectiveG {
  std::function<double(double)> G;
  std::function<double(double)> dG;
};

EffectiveG effective_G(const NonlinearModel& model, double omega);

/// Frequencies for which decaying standing waves exist: (E1, E0) for NS,
/// (m0, m) for NKG, with the lower end estimated by scanning s.
struct FrequencyInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool open_below = false;  ///< lower end is -infinity (scan still decreasing at s_max)

  bool contains(double omega) const { return omega < upper && (open_below || omega > lower); }
};

FrequencyInterval admissible_frequencies(const NonlinearModel& model, double s_max = 10.0, double step = 1e-3);

enum class ShotOutcome { overshoot, undershoot, converged, unresolved };
std::string to_string(ShotOutcome outcome);

struct Shot {
  ShotOutcome outcome = ShotOutcome::unresolved;
  std::vector<double> r, u, du;
  /// First node at which the outcome event was detected (size() if none).
  std::size_t event_index = 0;
};

/// Integrates u'' + ((N-1)/r) u' = G'(u), u(0) = u0, u'(0) = 0 with classic RK4.
Shot shoot(const std::function<double(double)>& dG, int dim, double u0, double h_r, double r_max,
           const std::function<double(double)>& G = {});

struct GroundStateOptions {
  double h_r = 1e-3;
  double r_max = 30.0;
  double u0_min = 1e-3;
  double u0_max = 100.0;
  double bracket_growth = 1.05;
  double bisection_rel_tol = 1e-12;
  int max_bisections = 200;
  double pohozaev_tol = 1e-3;
};

RadialProfile find_ground_state(const NonlinearModel& model, double omega, int dim, const GroundStateOptions& opts = {});

/// Embeds u(|x - center|) on the grid; throws if the embedded field's boundary
/// magnitude exceeds max_leakage times its peak.
ComplexField profile_to_field(const RadialProfile& profile, const Grid& grid, const Point& center,
                              double max_leakage = 1e-8);

}  // namespace hylos
