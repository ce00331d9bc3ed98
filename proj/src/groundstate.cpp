#include "hylos/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hylos/error.hpp"
#include "hylos/observables.hpp"

namespace hylos {

double sphere_area(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return 2.0 * std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi;
  }
  fail(ErrorCode::invalid_argument, "dimension must be 1, 2 or 3");
}

namespace {

// Four-point Lagrange interpolation on a uniform table with even/odd
// reflection through the origin.
double lagrange4(const std::vector<double>& table, double h, double radius, bool odd) {
  if (table.empty()) return 0.0;
  const double rmax = h * static_cast<double>(table.size() - 1);
  if (radius > rmax) return 0.0;
  const double sign = radius < 0.0 && odd ? -1.0 : 1.0;
  radius = std::abs(radius);
  const auto last = static_cast<long>(table.size()) - 1;
  long i = static_cast<long>(std::floor(radius / h));
  i = std::clamp(i, 0L, std::max(0L, last - 1));
  const long base = std::clamp(i - 1, -1L, std::max(-1L, last - 3));
  auto at = [&](long j) {
    if (j < 0) return odd ? -table[static_cast<std::size_t>(-j)] : table[static_cast<std::size_t>(-j)];
    return table[static_cast<std::size_t>(std::min(j, last))];
  };
  const double x = radius / h;
  double acc = 0.0;
  for (long a = 0; a < 4; ++a) {
    double w = 1.0;
    for (long b = 0; b < 4; ++b) {
      if (b != a) w *= (x - static_cast<double>(base + b)) / static_cast<double>(a - b);
    }
    acc += w * at(base + a);
  }
  return sign * acc;
}

}  // namespace

double RadialProfile::value(double radius) const { return lagrange4(u, h_r, radius, false); }

double RadialProfile::slope(double radius) const { return lagrange4(du, h_r, radius, true); }

double RadialProfile::integrate(const std::function<double(double, double, double)>& f) const {
  if (r.empty()) return 0.0;
  double acc = 0.0;
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    acc += w * f(r[i], u[i], du[i]) * std::pow(r[i], dim - 1);
  }
  return acc * h_r * sphere_area(dim);
}

EffectiveG effective_G(const NonlinearModel& model, double omega) {
  if (model.equation() == Equation::ns) {
    return {[model, omega](double s) { return model.W(s) - omega * s * s; },
            [model, omega](double s) { return model.F_prime(s) - 2.0 * omega * s; }};
  }
  return {[model, omega](double s) { return model.W(s) - 0.5 * omega * omega * s * s; },
          [model, omega](double s) { return model.F_prime(s) - omega * omega * s; }};
}

FrequencyInterval admissible_frequencies(const NonlinearModel& model, double s_max, double step) {
  // NS:  E1 = inf_s (E0 + N(s)/s^2).   NKG: m0^2 = inf_s 2 W(s)/s^2.
  auto ratio = [&](double s) {
    return model.equation() == Equation::ns ? model.rest_energy() + model.N(s) / (s * s) : 2.0 * model.W(s) / (s * s);
  };
  const auto n = static_cast<long>(std::floor(s_max / step));
  double best = std::numeric_limits<double>::infinity();
  long best_i = 0;
  double prev = std::numeric_limits<double>::infinity();
  bool decreasing_at_end = false;
  for (long i = 1; i <= n; ++i) {
    const double v = ratio(static_cast<double>(i) * step);
    if (v < best) {
      best = v;
      best_i = i;
    }
    if (i == n) decreasing_at_end = v < prev;
    prev = v;
  }
  FrequencyInterval out;
  out.upper = model.rest_energy();
  if (model.equation() == Equation::ns) {
    out.open_below = best_i == n && decreasing_at_end;
    out.lower = out.open_below ? -std::numeric_limits<double>::infinity() : best;
  } else {
    out.open_below = best < 0.0 || (best_i == n && decreasing_at_end);
    out.lower = out.open_below ? -std::numeric_limits<double>::infinity() : std::sqrt(best);
  }
  require(out.open_below || out.lower < out.upper * (1.0 - 1e-12), ErrorCode::degenerate_input,
          "empty frequency interval: the model has no hylomorphic range (N >= 0 on the scan)");
  return out;
}

std::string to_string(ShotOutcome outcome) {
  switch (outcome) {
    case ShotOutcome::overshoot: return "overshoot";
    case ShotOutcome::undershoot: return "undershoot";
    case ShotOutcome::converged: return "converged";
    case ShotOutcome::unresolved: return "unresolved";
  }
  return "unknown";
}

Shot shoot(const std::function<double(double)>& dG, int dim, double u0, double h_r, double r_max,
           const std::function<double(double)>& G) {
  require(u0 > 0.0, ErrorCode::invalid_argument, "shooting amplitude u0 must be positive");
  require(h_r > 0.0 && r_max > h_r, ErrorCode::invalid_argument, "need 0 < h_r < r_max");
  require(dim >= 1 && dim <= 3, ErrorCode::invalid_argument, "dimension must be 1, 2 or 3");
  const double damping = static_cast<double>(dim - 1);
  auto accel = [&](double r, double u, double du) {
    if (r == 0.0) return dG(u) / static_cast<double>(dim);
    return dG(u) - damping * du / r;
  };

  const auto steps = static_cast<std::size_t>(std::llround(r_max / h_r));
  Shot shot;
  shot.r.reserve(steps + 1);
  shot.u.reserve(steps + 1);
  shot.du.reserve(steps + 1);
  shot.r.push_back(0.0);
  shot.u.push_back(u0);
  shot.du.push_back(0.0);

  // Mechanical energy 1/2 u'^2 - G(u) is non-increasing in r; growth means the step is too coarse.
  const double e0 = G ? -G(u0) : 0.0;
  const double e_scale = G ? std::max({std::abs(e0), u0 * std::abs(dG(u0)), 1e-300}) : 1.0;

  double u = u0, du = 0.0;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double r = static_cast<double>(i - 1) * h_r;
    const double k1u = du, k1v = accel(r, u, du);
    const double k2u = du + 0.5 * h_r * k1v, k2v = accel(r + 0.5 * h_r, u + 0.5 * h_r * k1u, k2u);
    const double k3u = du + 0.5 * h_r * k2v, k3v = accel(r + 0.5 * h_r, u + 0.5 * h_r * k2u, k3u);
    const double k4u = du + h_r * k3v, k4v = accel(r + h_r, u + h_r * k3u, k4u);
    u += h_r / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    du += h_r / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    require(std::isfinite(u) && std::isfinite(du), ErrorCode::numerical_failure, "shooting trajectory diverged");
    shot.r.push_back(static_cast<double>(i) * h_r);
    shot.u.push_back(u);
    shot.du.push_back(du);
    if (u <= 0.0) {
      shot.outcome = ShotOutcome::overshoot;
      shot.event_index = i;
      return shot;
    }
    if (G) {
      const double e = 0.5 * du * du - G(u);
      require(e - e0 <= 1e-6 * e_scale, ErrorCode::numerical_failure,
              "radial step too large: shooting energy monitor increased");
    }
    if (du > 0.0) {
      shot.outcome = ShotOutcome::undershoot;
      shot.event_index = i;
      return shot;
    }
  }
  shot.event_index = shot.r.size();
  shot.outcome = u < 1e-8 * u0 ? ShotOutcome::converged : ShotOutcome::unresolved;
  return shot;
}

RadialProfile find_ground_state(const NonlinearModel& model, double omega, int dim, const GroundStateOptions& opts) {
  const auto eg = effective_G(model, omega);
  auto fire = [&](double u0) { return shoot(eg.dG, dim, u0, opts.h_r, opts.r_max, eg.G); };

  // Bracket: scan u0 upward until an undershoot is followed by an overshoot.
  double lo = -1.0, hi = -1.0;
  Shot best;
  bool have_converged = false;
  for (double u0 = opts.u0_min; u0 <= opts.u0_max; u0 *= opts.bracket_growth) {
    Shot s = fire(u0);
    if (s.outcome == ShotOutcome::undershoot) {
      lo = u0;
    } else if (s.outcome == ShotOutcome::overshoot && lo > 0.0) {
      hi = u0;
      break;
    } else if (s.outcome == ShotOutcome::converged && lo > 0.0) {
      best = std::move(s);
      have_converged = true;
      break;
    }
  }
  require(have_converged || (lo > 0.0 && hi > 0.0), ErrorCode::bracket_not_found,
          "no undershoot/overshoot bracket for u0 in (0, " + std::to_string(opts.u0_max) +
              "]; omega = " + std::to_string(omega) + " is probably not admissible");

  if (!have_converged) {
    for (int it = 0; it < opts.max_bisections && hi - lo >= opts.bisection_rel_tol * lo; ++it) {
      const double mid = 0.5 * (lo + hi);
      const Shot s = fire(mid);
      if (s.outcome == ShotOutcome::undershoot || s.outcome == ShotOutcome::unresolved) {
        lo = mid;
      } else if (s.outcome == ShotOutcome::overshoot) {
        hi = mid;
      } else {
        lo = hi = mid;
      }
    }
    best = fire(lo);
  }

  // Keep the monotone part up to where bisection noise is still negligible,
  // then continue with the decaying solution r^-nu K_nu(mu r) of the
  // linearized equation. A hard cut would seed high-wavenumber noise.
  std::size_t keep = best.outcome == ShotOutcome::converged ? best.r.size() : best.event_index;
  for (std::size_t i = 1; i < keep; ++i) {
    if (best.u[i] < 1e-3 * best.u[0]) {
      keep = i + 1;
      break;
    }
  }
  RadialProfile p;
  p.dim = dim;
  p.equation = model.equation();
  p.omega = omega;
  p.h_r = opts.h_r;
  const auto total = static_cast<std::size_t>(std::llround(opts.r_max / opts.h_r)) + 1;
  p.r.resize(total);
  p.u.assign(total, 0.0);
  p.du.assign(total, 0.0);
  for (std::size_t i = 0; i < total; ++i) p.r[i] = static_cast<double>(i) * opts.h_r;
  keep = std::min(keep, total);
  for (std::size_t i = 0; i < keep; ++i) {
    p.u[i] = best.u[i];
    p.du[i] = best.du[i];
  }
  p.u0 = p.u[0];

  const double eps = 1e-9 * p.u0;
  const double mu2 = eg.dG(eps) / eps;
  if (keep >= 2 && keep < total && mu2 > 0.0) {
    const double mu = std::sqrt(mu2);
    const double nu = 0.5 * (dim - 2);
    const double rm = p.r[keep - 1], um = p.u[keep - 1];
    auto shape = [&](double r, double order) { return std::pow(r, -nu) * std::cyl_bessel_k(std::abs(order), mu * r); };
    const double base = shape(rm, nu);
    for (std::size_t i = keep; i < total; ++i) {
      const double r = p.r[i];
      p.u[i] = um * shape(r, nu) / base;
      p.du[i] = -mu * um * shape(r, nu + 1.0) / base;
      if (!(p.u[i] > 0.0)) {
        p.u[i] = p.du[i] = 0.0;
        break;
      }
    }
  }

  for (std::size_t i = 1; i < total && p.u[i] > 0.0; ++i) {
    require(p.u[i] < p.u[i - 1], ErrorCode::numerical_failure, "ground-state profile is not strictly decreasing");
  }
  require(p.u.back() < 1e-8 * p.u0, ErrorCode::numerical_failure, "ground-state tail did not decay");
  p.sigma = p.integrate([](double, double u, double) { return u * u; });
  const double residual = derrick_pohozaev_residual(p, eg.G);
  require(std::abs(residual) < opts.pohozaev_tol, ErrorCode::numerical_failure,
          "Derrick-Pohozaev residual " + std::to_string(residual) + " exceeds tolerance");
  return p;
}

ComplexField profile_to_field(const RadialProfile& profile, const Grid& grid, const Point& center, double max_leakage) {
  ComplexField f = ComplexField::from_function(grid, [&](const Point& x) {
    double r2 = 0.0;
    for (int d = 0; d < grid.dim(); ++d) r2 += (x[d] - center[d]) * (x[d] - center[d]);
    return cplx{profile.value(std::sqrt(r2)), 0.0};
  });
  require(f.boundary_leakage() <= max_leakage, ErrorCode::invalid_argument,
          "profile tail too fat for box: boundary/peak = " + std::to_string(f.boundary_leakage()));
  return f;
}

}  // namespace hylos
