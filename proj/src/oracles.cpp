#include "hylos/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "hylos/error.hpp"

namespace hylos {

namespace {

long step_count(double t_end, double dt) {
  require(dt > 0.0 && t_end >= 0.0, ErrorCode::invalid_argument, "oracle needs dt > 0 and t_end >= 0");
  return std::lround(t_end / dt);
}

}  // namespace

std::vector<ParticleState> newton_oracle(const Point& q0, const Point& v0, const ExternalPotential& V, double t_end,
                                         double dt) {
  const long n = step_count(t_end, dt);
  std::vector<ParticleState> path;
  path.reserve(static_cast<std::size_t>(n) + 1);
  Point q = q0, v = v0;
  auto force = [&](const Point& x) {
    Point g = eval_potential_grad(V, x);
    for (double& c : g) c = -c;
    return g;
  };
  auto axpy = [](const Point& a, double s, const Point& b) {
    return Point{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
  };
  path.push_back({0.0, q, v, v, 1.0});
  for (long i = 1; i <= n; ++i) {
    const Point k1q = v, k1v = force(q);
    const Point k2q = axpy(v, 0.5 * dt, k1v), k2v = force(axpy(q, 0.5 * dt, k1q));
    const Point k3q = axpy(v, 0.5 * dt, k2v), k3v = force(axpy(q, 0.5 * dt, k2q));
    const Point k4q = axpy(v, dt, k3v), k4v = force(axpy(q, dt, k3q));
    for (int d = 0; d < 3; ++d) {
      q[d] += dt / 6.0 * (k1q[d] + 2.0 * k2q[d] + 2.0 * k3q[d] + k4q[d]);
      v[d] += dt / 6.0 * (k1v[d] + 2.0 * k2v[d] + 2.0 * k3v[d] + k4v[d]);
    }
    path.push_back({static_cast<double>(i) * dt, q, v, v, 1.0});
  }
  return path;
}

double relativistic_energy(const Point& p, double m0) {
  return std::sqrt(m0 * m0 + p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
}

std::vector<ParticleState> relativistic_oracle(const Point& p0, double m0, double t_end, double dt) {
  require(m0 > 0.0, ErrorCode::invalid_argument, "rest mass must be positive");
  const long n = step_count(t_end, dt);
  const double e = relativistic_energy(p0, m0);
  const Point qdot{p0[0] / e, p0[1] / e, p0[2] / e};
  std::vector<ParticleState> path;
  path.reserve(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * dt;
    path.push_back({t, {qdot[0] * t, qdot[1] * t, qdot[2] * t}, qdot, p0, m0});
  }
  return path;
}

Point position_at(const std::vector<ParticleState>& path, double t) {
  require(!path.empty(), ErrorCode::invalid_argument, "empty trajectory");
  if (t <= path.front().t) return path.front().q;
  if (t >= path.back().t) return path.back().q;
  const auto it = std::upper_bound(path.begin(), path.end(), t,
                                   [](double x, const ParticleState& s) { return x < s.t; });
  const auto& b = *it;
  const auto& a = *(it - 1);
  const double w = (t - a.t) / (b.t - a.t);
  return {a.q[0] + w * (b.q[0] - a.q[0]), a.q[1] + w * (b.q[1] - a.q[1]), a.q[2] + w * (b.q[2] - a.q[2])};
}

}  // namespace hylos
