#pragma once

#include <vector>

#include "hylos/grid.hpp"
#include "hylos/models.hpp"

namespace hylos {

struct ParticleState {
  double t = 0.0;
  Point q{0.0, 0.0, 0.0};
  Point qdot{0.0, 0.0, 0.0};
  Point p{0.0, 0.0, 0.0};
  double m0 = 1.0;
};

/// q'' = -grad V(q) with unit mass, classic RK4. Samples every step including t = 0.
std::vector<ParticleState> newton_oracle(const Point& q0, const Point& v0, const ExternalPotential& V, double t_end,
                                         double dt);

/// Free relativistic particle, qdot = p / sqrt(m0^2 + p^2).
std::vector<ParticleState> relativistic_oracle(const Point& p0, double m0, double t_end, double dt);

double relativistic_energy(const Point& p, double m0);

/// Piecewise-linear lookup of q at time t in a sampled trajectory.
Point position_at(const std::vector<ParticleState>& path, double t);

}  // namespace hylos
