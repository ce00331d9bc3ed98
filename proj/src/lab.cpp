#include "hylos/lab.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>

#include "fft.hpp"
#include "hylos/error.hpp"
#include "hylos/io.hpp"
#include "hylos/observables.hpp"
#include "hylos/oracles.hpp"
#include "hylos/symmetry.hpp"
#include "json.hpp"

namespace hylos {

namespace {

constexpr double kPi = std::numbers::pi;

double norm(const Point& p) { return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]); }

Report make_report(const std::string& name, const Config& cfg) {
  Report r;
  r.experiment = name;
  r.config_hash = cfg.hash();
  return r;
}

std::string speed_tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_v%g", v);
  return buf;
}

double base_frequency(const Config& cfg) {
  return cfg.text("boost.omega0").empty() ? cfg.real("groundstate.omega") : cfg.real("boost.omega0");
}

std::vector<double> row_values(const DiagnosticsRow& r) {
  std::vector<double> v{r.t, r.energy, r.charge};
  v.insert(v.end(), r.momentum.begin(), r.momentum.end());
  v.insert(v.end(), r.angular_momentum.begin(), r.angular_momentum.end());
  v.push_back(r.lambda);
  v.insert(v.end(), r.center.begin(), r.center.end());
  v.push_back(r.bound_mass);
  v.push_back(r.leakage);
  return v;
}

Series diagnostics_series(const std::string& name, const std::vector<DiagnosticsRow>& rows) {
  Series s{name, diagnostics_header(), {}};
  for (const auto& r : rows) s.rows.push_back(row_values(r));
  return s;
}

/// Fitted velocity of the row centers along axis 1 over the last `window` rows.
double fitted_speed(const std::vector<DiagnosticsRow>& rows, std::size_t window) {
  std::vector<double> t;
  std::vector<Point> c;
  for (const auto& r : rows) {
    t.push_back(r.t);
    c.push_back(r.center);
  }
  return fit_velocity(t, c, window)[0];
}

double max_relative_drift(const std::vector<DiagnosticsRow>& rows, double DiagnosticsRow::*field) {
  double worst = 0.0;
  const double ref = rows.front().*field;
  for (const auto& r : rows) worst = std::max(worst, std::abs(r.*field - ref) / std::max(std::abs(ref), 1e-300));
  return worst;
}

RadialProfile solve_profile(const Config& cfg, const NonlinearModel& model, double omega, int dim) {
  return find_ground_state(model, omega, dim, groundstate_options(cfg));
}

}  // namespace

bool Report::pass() const {
  bool any = false;
  for (const auto& v : verdicts) {
    if (!v.gating) continue;
    any = true;
    if (!v.value) return false;
  }
  return any;
}

double Report::metric(const std::string& name) const {
  for (const auto& [k, v] : metrics)
    if (k == name) return v;
  fail(ErrorCode::invalid_argument, "report has no metric '" + name + "'");
}

bool Report::verdict(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return v.value;
  fail(ErrorCode::invalid_argument, "report has no verdict '" + name + "'");
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"groundstate", "stability",  "travel",
                                                 "potential_dynamics", "relativity", "hylomorphy_scan"};
  return names;
}

Grid grid_from_config(const Config& cfg) {
  const long dim = cfg.integer("grid.dim");
  require(dim >= 1 && dim <= 3, ErrorCode::config_error, "grid.dim must be 1, 2 or 3");
  const long n = cfg.integer("grid.n");
  require(n >= 8, ErrorCode::config_error, "grid.n must be at least 8");
  const double L = cfg.real("grid.L");
  const std::vector<double> lengths(static_cast<std::size_t>(dim), L);
  const std::vector<std::size_t> counts(static_cast<std::size_t>(dim), static_cast<std::size_t>(n));
  try {
    return Grid::make(static_cast<int>(dim), lengths, counts);
  } catch (const Error& e) {
    fail(ErrorCode::config_error, std::string("grid: ") + e.what());
  }
}

NonlinearModel model_from_config(const Config& cfg) {
  const Equation eq = parse_equation(cfg.text("model.equation"));
  const double a = cfg.real("model.a");
  try {
    switch (parse_family(cfg.text("model.family"))) {
      case Family::power_focusing: return NonlinearModel::power_focusing(eq, a, cfg.real("model.p"), cfg.real("model.c_p"));
      case Family::double_power:
        return NonlinearModel::double_power(eq, a, cfg.real("model.p"), cfg.real("model.q"), cfg.real("model.c_p"),
                                            cfg.real("model.c_q"));
      case Family::saturating_intro: return NonlinearModel::saturating_intro(eq, a);
    }
  } catch (const Error& e) {
    fail(ErrorCode::config_error, std::string("model: ") + e.what());
  }
  fail(ErrorCode::config_error, "model: unknown family");
}

ExternalPotential potential_from_config(const Config& cfg) {
  if (cfg.text("potential.kind") == "harmonic") {
    const double kappa = cfg.real("potential.kappa");
    require(kappa > 0.0, ErrorCode::config_error, "potential.kappa must be positive");
    return ExternalPotential::harmonic(kappa);
  }
  return ExternalPotential::zero();
}

GroundStateOptions groundstate_options(const Config& cfg) {
  GroundStateOptions o;
  o.h_r = cfg.real("groundstate.h_r");
  o.r_max = cfg.real("groundstate.r_max");
  o.u0_max = cfg.real("groundstate.u0_max");
  o.pohozaev_tol = cfg.real("groundstate.pohozaev_tol");
  require(o.h_r > 0.0 && o.r_max > 10.0 * o.h_r, ErrorCode::config_error, "need 0 < groundstate.h_r << r_max");
  require(o.u0_max > o.u0_min, ErrorCode::config_error, "groundstate.u0_max too small");
  return o;
}

EvolveConfig evolve_from_config(const Config& cfg) {
  EvolveConfig e;
  e.dt = cfg.real("evolve.dt");
  e.t_end = cfg.real("evolve.t_end");
  e.snapshot_every = static_cast<int>(cfg.integer("evolve.snapshot_every"));
  e.diagnostic_every = static_cast<int>(cfg.integer("evolve.diagnostic_every"));
  e.blowup_factor = cfg.real("evolve.blowup");
  e.scheme = parse_equation(cfg.text("model.equation")) == Equation::ns ? Scheme::ns_splitstep : Scheme::nkg_leapfrog;
  e.validate();
  return e;
}

ComplexField trapezoid_bump(const Grid& grid, double R, const Point& center) {
  require(R > 0.0, ErrorCode::invalid_argument, "bump radius must be positive");
  for (int d = 0; d < grid.dim(); ++d) {
    require(R + 1.0 < 0.5 * grid.length(d) - std::abs(center[d]), ErrorCode::invalid_argument,
            "bump support does not fit in the box");
  }
  return ComplexField::from_function(grid, [&](const Point& x) {
    Point y{0.0, 0.0, 0.0};
    for (int d = 0; d < grid.dim(); ++d) y[d] = x[d] - center[d];
    const double r = norm(y);
    return cplx{r < R ? 1.0 : (r < R + 1.0 ? 1.0 + R - r : 0.0), 0.0};
  });
}

ComplexField seeded_noise(const Grid& grid, unsigned long long seed, double k_cut) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  ComplexField f(grid);
  auto vals = f.values();
  detail::for_each_mode(grid, [&](std::size_t n, const Point& k, const std::array<std::size_t, 3>&) {
    if (norm(k) <= k_cut) {
      const double re = nd(rng);
      vals[n] = cplx{re, nd(rng)};
    }
  });
  detail::fft_backward(grid, vals);
  RealField dens(grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) dens[n] = std::norm(vals[n]);
  const double l2 = std::sqrt(integrate(dens, grid));
  require(l2 > 0.0, ErrorCode::degenerate_input, "noise cutoff admits no modes");
  f *= 1.0 / l2;
  return f;
}

Point locate_peak(const ComplexField& field) {
  const Grid& g = field.grid();
  std::size_t best = 0;
  for (std::size_t n = 1; n < g.size(); ++n)
    if (std::abs(field[n]) > std::abs(field[best])) best = n;
  Point x = g.position(best);
  const auto idx = g.indices(best);
  for (int d = 0; d < g.dim(); ++d) {
    auto lo = idx, hi = idx;
    const std::size_t cnt = g.count(d);
    lo[d] = (idx[d] + cnt - 1) % cnt;
    hi[d] = (idx[d] + 1) % cnt;
    const double fm = std::norm(field[g.linear(lo)]), f0 = std::norm(field[best]), fp = std::norm(field[g.linear(hi)]);
    const double curv = fm - 2.0 * f0 + fp;
    if (curv < 0.0) x[d] += std::clamp(0.5 * (fm - fp) / curv, -0.5, 0.5) * g.spacing(d);
  }
  return x;
}

double half_max_width(const ComplexField& field, const Point& peak) {
  const Grid& g = field.grid();
  const SpectralInterpolator interp(field);
  auto f = [&](double s) {
    Point x = peak;
    x[0] += s;
    return std::abs(interp(x));
  };
  const double half = 0.5 * f(0.0);
  auto crossing = [&](double dir) {
    const double step = g.spacing(0);
    double inner = 0.0, outer = step;
    while (f(dir * outer) > half) {
      inner = outer;
      outer += step;
      require(outer < 0.5 * g.length(0), ErrorCode::numerical_failure, "half-maximum not reached inside the box");
    }
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (inner + outer);
      (f(dir * mid) > half ? inner : outer) = mid;
    }
    return 0.5 * (inner + outer);
  };
  return crossing(1.0) + crossing(-1.0);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorCode::invalid_argument, "slope fit needs two or more samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  require(sxx > 0.0, ErrorCode::degenerate_input, "slope fit needs distinct abscissae");
  return sxy / sxx;
}

// ---------------------------------------------------------------------------

Report experiment_groundstate(const Config& cfg) {
  Report rep = make_report("groundstate", cfg);
  const NonlinearModel model = model_from_config(cfg);
  const int dim = static_cast<int>(cfg.integer("grid.dim"));
  require(dim >= 1 && dim <= 3, ErrorCode::config_error, "grid.dim must be 1, 2 or 3");
  const double omega = cfg.real("groundstate.omega");
  const double E0 = model.rest_energy();
  rep.add("omega", omega);
  rep.add("E0", E0);
  try {
    const FrequencyInterval fi = admissible_frequencies(model);
    rep.add("omega_lower", fi.lower);
    rep.add("omega_upper", fi.upper);
    rep.check("omega_admissible", fi.contains(omega), false);
  } catch (const Error& e) {
    rep.notes.push_back(e.what());
    rep.check("omega_admissible", false, false);
  }

  RadialProfile p;
  try {
    p = solve_profile(cfg, model, omega, dim);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::bracket_not_found && e.code() != ErrorCode::numerical_failure) throw;
    rep.notes.push_back(e.what());
    rep.check("solver_gates", false);
    return rep;
  }
  const EffectiveG eg = effective_G(model, omega);
  const double grad = p.integrate([](double, double, double du) { return du * du; });
  const double pot = p.integrate([&](double, double u, double) { return model.W(u); });
  double E = 0.5 * grad + pot, H = p.sigma;
  if (model.equation() == Equation::nkg) {
    E += 0.5 * omega * omega * p.sigma;
    H = -omega * p.sigma;
  }
  const double lambda = E / std::abs(H);
  rep.add("u0", p.u0);
  rep.add("sigma", p.sigma);
  rep.add("energy", E);
  rep.add("charge", H);
  rep.add("lambda", lambda);
  rep.add("pohozaev_residual", derrick_pohozaev_residual(p, eg.G));
  rep.check("solver_gates", true);
  rep.check("hylomorphic", lambda < E0, false);
  if (!(lambda < E0)) rep.notes.push_back("Lambda >= E0: the profile solves the static equation but is not hylomorphic");
  rep.profiles.push_back(std::move(p));
  return rep;
}

Report experiment_stability(const Config& cfg) {
  Report rep = make_report("stability", cfg);
  const NonlinearModel model = model_from_config(cfg);
  require(model.equation() == Equation::ns, ErrorCode::config_error, "stability runs on the NS ground state");
  const Grid grid = grid_from_config(cfg);
  const ExternalPotential V = potential_from_config(cfg);
  const RadialProfile p = solve_profile(cfg, model, cfg.real("groundstate.omega"), grid.dim());
  const NSState ground = standing_wave_ns(p, grid, {0.0, 0.0, 0.0});
  const double c_sigma = energy_ns(ground, model, V);
  const double sigma = hylenic_charge_ns(ground);
  rep.add("c_sigma", c_sigma);
  rep.add("sigma", sigma);

  const double noise = cfg.real("stability.noise");
  require(noise >= 0.0, ErrorCode::config_error, "stability.noise must be >= 0");
  NSState perturbed = ground;
  perturbed.psi += seeded_noise(grid, static_cast<unsigned long long>(cfg.integer("seed")), 2.0) *
                   cplx{noise * std::sqrt(sigma), 0.0};

  EvolveConfig ec = evolve_from_config(cfg);
  ec.snapshot_every = ec.diagnostic_every;

  struct Run {
    Trajectory traj;
    std::vector<double> peaks;
  };
  auto evolve = [&](const NSState& s, const NonlinearModel& m) {
    Run r;
    Sinks sinks;
    sinks.keep_snapshots = false;
    sinks.on_snapshot = [&](double, const ComplexField& psi) { r.peaks.push_back(psi.max_abs()); };
    r.traj = run(s, m, V, ec, sinks);
    return r;
  };
  const Run main = evolve(perturbed, model);
  const Run still = evolve(ground, model);
  const NonlinearModel free_model = NonlinearModel::power_focusing(Equation::ns, model.a(), 4.0, 0.0);
  const Run control = evolve(ground, free_model);
  for (const Run* r : {&main, &still, &control}) {
    if (r->traj.aborted) rep.notes.push_back("run aborted: " + r->traj.reason);
  }

  const double floor = cfg.real("stability.peak_floor");
  const double factor = cfg.real("stability.liapunov_factor");
  auto min_peak_ratio = [](const Run& r) {
    return *std::min_element(r.peaks.begin(), r.peaks.end()) / r.peaks.front();
  };
  std::vector<double> lv;
  for (const auto& row : main.traj.rows) lv.push_back(liapunov_value(row.energy, row.charge, c_sigma, sigma));
  const double lv0 = lv.front();
  const double lv_max = *std::max_element(lv.begin(), lv.end());
  double still_dist = 0.0;
  for (const auto& row : still.traj.rows) {
    still_dist = std::max({still_dist, std::abs(row.energy - c_sigma) / std::abs(c_sigma),
                           std::abs(row.charge - sigma) / sigma});
  }
  rep.add("liapunov_initial", lv0);
  rep.add("liapunov_max", lv_max);
  rep.add("peak_min_ratio", min_peak_ratio(main));
  rep.add("unperturbed_EH_distance", still_dist);
  rep.add("control_peak_min_ratio", min_peak_ratio(control));

  const double drift_tol = cfg.real("stability.drift_tol");
  if (noise > 0.0) {
    rep.check("liapunov_bounded", !main.traj.aborted && lv_max < factor * lv0);
  } else {
    rep.notes.push_back("noise = 0: Liapunov growth is replaced by the (E,H) drift check");
  }
  rep.check("peak_persists", !main.traj.aborted && min_peak_ratio(main) > floor);
  rep.check("unperturbed_drift", !still.traj.aborted && still_dist < drift_tol);
  rep.check("control_disperses", min_peak_ratio(control) < floor);

  Series s{"stability", "t,E,H,liapunov,control_E,control_H", {}};
  for (std::size_t i = 0; i < main.traj.rows.size() && i < control.traj.rows.size(); ++i) {
    const auto& m = main.traj.rows[i];
    const auto& c = control.traj.rows[i];
    s.rows.push_back({m.t, m.energy, m.charge, lv[i], c.energy, c.charge});
  }
  rep.series.push_back(std::move(s));
  Series peaks{"peaks", "sample,peak,control_peak", {}};
  for (std::size_t i = 0; i < main.peaks.size() && i < control.peaks.size(); ++i)
    peaks.rows.push_back({static_cast<double>(i), main.peaks[i], control.peaks[i]});
  rep.series.push_back(std::move(peaks));
  return rep;
}

Report experiment_travel(const Config& cfg) {
  Report rep = make_report("travel", cfg);
  const NonlinearModel model = model_from_config(cfg);
  const Grid grid = grid_from_config(cfg);
  const EvolveConfig ec = evolve_from_config(cfg);
  const double v = cfg.real("boost.v");
  const Point x0 = cfg.point("boost.center");
  const auto window = static_cast<std::size_t>(cfg.integer("travel.window"));
  const double speed_tol = cfg.real("travel.speed_tol");
  const double identity_tol = cfg.real("travel.identity_tol");
  rep.add("boost_speed", v);

  Trajectory traj;
  double ratio = 0.0;
  if (model.equation() == Equation::ns) {
    const RadialProfile p = solve_profile(cfg, model, cfg.real("groundstate.omega"), grid.dim());
    NSState s = standing_wave_ns(p, grid, {0.0, 0.0, 0.0}, cfg.real("boost.theta"));
    s = galilean_boost(s, {v, 0.0, 0.0}, x0);
    traj = run(s, model, ExternalPotential::zero(), ec);
    ratio = traj.rows.back().momentum[0] / traj.rows.back().charge;
    rep.add("P_over_H", ratio);
  } else {
    const double omega0 = base_frequency(cfg);
    const RadialProfile p = solve_profile(cfg, model, omega0, grid.dim());
    const KGState s = lorentz_boost_initialdata(p, grid, omega0, v, x0, cfg.real("boost.theta"));
    traj = run(s, model, ec);
    ratio = traj.rows.back().momentum[0] / traj.rows.back().energy;
    rep.add("P_over_E", ratio);
  }
  if (traj.aborted) rep.notes.push_back("run aborted: " + traj.reason);
  const double speed = fitted_speed(traj.rows, window);
  rep.add("fitted_speed", speed);
  rep.add("energy_drift", max_relative_drift(traj.rows, &DiagnosticsRow::energy));
  rep.check("speed_matches_boost", !traj.aborted && std::abs(speed - v) < speed_tol);
  rep.check("speed_matches_momentum_ratio", !traj.aborted && std::abs(speed - ratio) < identity_tol);
  rep.series.push_back(diagnostics_series("diagnostics", traj.rows));
  return rep;
}

Report experiment_potential_dynamics(const Config& cfg) {
  Report rep = make_report("potential_dynamics", cfg);
  const NonlinearModel model = model_from_config(cfg);
  require(model.equation() == Equation::ns, ErrorCode::config_error, "potential_dynamics runs the NS equation");
  const Grid grid = grid_from_config(cfg);
  const int dim = grid.dim();
  const ExternalPotential V = potential_from_config(cfg);
  const bool harmonic = !V.is_zero();
  const double kappa = harmonic ? cfg.real("potential.kappa") : 0.0;
  const double alpha = cfg.real("semiclassical.alpha");
  const double gexp = cfg.real("semiclassical.gamma_exp");
  require(alpha > gexp, ErrorCode::config_error, "semiclassical.alpha must exceed semiclassical.gamma_exp");
  const std::vector<double> ladder = cfg.reals("semiclassical.h");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    require(ladder[i] > 0.0 && (i == 0 || ladder[i] < ladder[i - 1]), ErrorCode::config_error,
            "semiclassical.h must be positive and strictly decreasing");
  }
  const Point q0 = cfg.point("semiclassical.q0");
  const Point v0 = cfg.point("semiclassical.v0");
  const double period = harmonic ? 2.0 * kPi / std::sqrt(kappa) : 2.0 * kPi;
  const double t_end = cfg.real("semiclassical.periods") * period;
  const double C = cfg.real("semiclassical.w0_scale");

  const RadialProfile U = solve_profile(cfg, model, cfg.real("groundstate.omega"), dim);
  const auto path = newton_oracle(q0, v0, V, t_end, 1e-3);
  const double amplitude = harmonic ? std::sqrt(norm(q0) * norm(q0) + norm(v0) * norm(v0) / kappa) : 0.0;
  rep.add("oscillation_amplitude", amplitude);

  // Perturbation shape w(y) = U(|y|) eta(y), fixed for the whole ladder.
  std::mt19937_64 rng(static_cast<unsigned long long>(cfg.integer("seed")));
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  std::normal_distribution<double> nd;
  struct Mode {
    Point k;
    cplx c;
  };
  std::vector<Mode> modes(8);
  for (auto& m : modes) {
    m.k = {0.0, 0.0, 0.0};
    for (int d = 0; d < dim; ++d) m.k[d] = uni(rng);
    const double re = nd(rng);
    m.c = cplx{re, nd(rng)};
  }
  auto eta = [&](const Point& y) {
    cplx acc{};
    for (const auto& m : modes) acc += m.c * std::polar(1.0, m.k[0] * y[0] + m.k[1] * y[1] + m.k[2] * y[2]);
    return acc;
  };
  const std::size_t ny = dim == 1 ? 2048 : (dim == 2 ? 256 : 64);
  const std::vector<double> ly(static_cast<std::size_t>(dim), 40.0);
  const std::vector<std::size_t> ny_counts(static_cast<std::size_t>(dim), ny);
  const Grid yg = Grid::make(dim, ly, ny_counts);
  const ComplexField Uy = ComplexField::from_function(yg, [&](const Point& y) { return cplx{U.value(norm(y)), 0.0}; });
  const ComplexField wy = ComplexField::from_function(yg, [&](const Point& y) { return U.value(norm(y)) * eta(y); });
  auto l2sq = [&](const ComplexField& f) {
    RealField d(f.size());
    for (std::size_t n = 0; n < f.size(); ++n) d[n] = std::norm(f[n]);
    return integrate(d, f.grid());
  };
  double h1sq = l2sq(wy);
  const auto gw = gradient(wy);
  for (int d = 0; d < dim; ++d) h1sq += l2sq(gw[d]);
  RealField vw(yg.size());
  for (std::size_t n = 0; n < yg.size(); ++n) vw[n] = eval_potential(V, yg.position(n)) * std::norm(wy[n]);
  const double vint = integrate(vw, yg);
  const double u_l2sq = l2sq(Uy);

  Series ladder_series{"ladder", "h,deviation,w0_H1,charge_drift", {}};
  std::vector<double> deviations;
  for (std::size_t level = 0; level < ladder.size(); ++level) {
    const double h = ladder[level];
    const Scaling scaling{h, alpha, gexp};
    const double beta = scaling.beta();
    const double bound = C * std::pow(h, alpha - gexp);
    double s = bound / std::sqrt(h1sq);
    if (vint * s * s > bound) s *= std::sqrt(bound / (vint * s * s));
    ComplexField Ty = Uy + wy * cplx{s, 0.0};
    const double nu = std::sqrt(u_l2sq / l2sq(Ty));

    NSState st;
    st.psi = ComplexField::from_function(grid, [&](const Point& x) {
      Point y{0.0, 0.0, 0.0};
      double phase = 0.0;
      for (int d = 0; d < dim; ++d) {
        y[d] = (x[d] - q0[d]) / std::pow(h, beta);
        phase += v0[d] * x[d] / h;
      }
      const double u = U.value(norm(y));
      return std::pow(h, -gexp) * nu * (u + s * u * eta(y)) * std::polar(1.0, phase);
    });
    require(st.psi.boundary_leakage() <= 1e-8, ErrorCode::config_error,
            "semiclassical initial datum does not fit in the box (increase grid.L)");

    EvolveConfig ec;
    ec.scheme = Scheme::ns_splitstep;
    ec.semiclassical = scaling;
    ec.dt = cfg.real("semiclassical.dt_factor") * h * h;
    ec.t_end = t_end;
    ec.dt = t_end / static_cast<double>(std::max(1L, std::lround(std::ceil(t_end / ec.dt))));
    ec.diagnostic_every = static_cast<int>(std::max(1L, std::lround(0.02 / ec.dt)));
    ec.blowup_factor = cfg.real("evolve.blowup");
    const Trajectory traj = run(st, model, V, ec);
    if (traj.aborted) rep.notes.push_back("h = " + format_real(h) + ": " + traj.reason);

    double dev = 0.0;
    Series path_series{"trajectory_h" + std::to_string(level), "t,q1,q2,q3,newton1,newton2,newton3", {}};
    for (const auto& row : traj.rows) {
      const Point qn = position_at(path, row.t);
      Point diff{0.0, 0.0, 0.0};
      for (int d = 0; d < dim; ++d) diff[d] = row.center[d] - qn[d];
      dev = std::max(dev, norm(diff));
      path_series.rows.push_back({row.t, row.center[0], row.center[1], row.center[2], qn[0], qn[1], qn[2]});
    }
    if (traj.aborted) dev = std::numeric_limits<double>::infinity();
    deviations.push_back(dev);
    const double charge_drift = max_relative_drift(traj.rows, &DiagnosticsRow::charge);
    ladder_series.rows.push_back({h, dev, s * std::sqrt(h1sq) * nu, charge_drift});
    rep.add("deviation" + speed_tag(h).replace(0, 2, "_h"), dev);
    rep.series.push_back(std::move(path_series));
  }
  rep.series.push_back(std::move(ladder_series));

  bool decreasing = true;
  for (std::size_t i = 1; i < deviations.size(); ++i) decreasing = decreasing && deviations[i] < deviations[i - 1];
  const double finest = deviations.back();
  double threshold = 0.0;
  if (!harmonic) {
    threshold = cfg.real("semiclassical.free_tol");
  } else if (amplitude > 0.0) {
    threshold = cfg.real("semiclassical.amplitude_tol") * amplitude;
  } else {
    threshold = 2.0 * grid.min_spacing();
  }
  rep.add("finest_threshold", threshold);
  if (harmonic && amplitude > 0.0) rep.check("deviation_decreases", decreasing);
  rep.check("finest_level_close", finest < threshold);
  return rep;
}

namespace {

struct KgRun {
  Trajectory traj;
  KGState initial;
};

KgRun run_boosted(const Config& cfg, const NonlinearModel& model, const RadialProfile& p, const Grid& grid,
                  double omega0, double v, std::size_t window) {
  EvolveConfig ec = evolve_from_config(cfg);
  ec.snapshot_every = static_cast<int>(std::max(1L, ec.steps() / static_cast<long>(window)));
  KgRun r;
  r.initial = lorentz_boost_initialdata(p, grid, omega0, v, cfg.point("boost.center"), cfg.real("boost.theta"));
  r.traj = run(r.initial, model, ec);
  return r;
}

/// Frequency of the phase at the moving peak, by regression over the last `window` snapshots.
double clock_frequency(const Trajectory& traj, std::size_t window) {
  const std::size_t n = traj.snapshots.size();
  const std::size_t start = n > window ? n - window : 0;
  std::vector<double> t, phase;
  double prev = 0.0, offset = 0.0;
  for (std::size_t j = start; j < n; ++j) {
    const ComplexField& f = traj.snapshots[j];
    const double ph = std::arg(SpectralInterpolator(f)(locate_peak(f)));
    if (j > start) {
      double jump = ph - prev;
      while (jump > kPi) {
        offset -= 2.0 * kPi;
        jump -= 2.0 * kPi;
      }
      while (jump < -kPi) {
        offset += 2.0 * kPi;
        jump += 2.0 * kPi;
      }
    }
    prev = ph;
    t.push_back(traj.snapshot_times[j]);
    phase.push_back(ph + offset);
  }
  return -fit_slope(t, phase);
}

}  // namespace

Report experiment_relativity(const Config& cfg) {
  Report rep = make_report("relativity", cfg);
  const NonlinearModel model = model_from_config(cfg);
  const Grid grid = grid_from_config(cfg);
  const std::vector<double> speeds = cfg.reals("relativity.v");
  const double tol = cfg.real("relativity.tol");
  const auto fit_window = static_cast<std::size_t>(cfg.integer("travel.window"));

  if (model.equation() == Equation::ns) {
    const double ns_tol = cfg.real("relativity.ns_tol");
    const RadialProfile p = solve_profile(cfg, model, cfg.real("groundstate.omega"), grid.dim());
    const EvolveConfig ec = evolve_from_config(cfg);
    for (std::size_t i = 0; i < speeds.size(); ++i) {
      const double v = speeds[i];
      const std::string tag = speed_tag(v);
      NSState s = galilean_boost(standing_wave_ns(p, grid, {0.0, 0.0, 0.0}), {v, 0.0, 0.0}, cfg.point("boost.center"));
      const Trajectory traj = run(s, model, ExternalPotential::zero(), ec);
      const double qdot = fitted_speed(traj.rows, fit_window);
      const double P = traj.rows.back().momentum[0], H = traj.rows.back().charge;
      rep.add("speed" + tag, v);
      rep.add("fitted_speed" + tag, qdot);
      rep.add("charge" + tag, H);
      if (v == 0.0) {
        rep.check("at_rest" + tag, std::abs(qdot) < ns_tol && std::abs(P) < ns_tol);
        continue;
      }
      rep.add("P_over_qdot" + tag, P / qdot);
      rep.check("mass_equals_charge" + tag, !traj.aborted && std::abs(P / qdot - H) < ns_tol);
    }
    return rep;
  }

  const double omega0 = base_frequency(cfg);
  const auto window = static_cast<std::size_t>(cfg.integer("relativity.window"));
  const RadialProfile p = solve_profile(cfg, model, omega0, grid.dim());
  const KgRun rest = run_boosted(cfg, model, p, grid, omega0, 0.0, window);
  const double rest_width = half_max_width(rest.traj.snapshots.back(), locate_peak(rest.traj.snapshots.back()));
  const double rest_clock = clock_frequency(rest.traj, window);
  rep.add("omega0", omega0);
  rep.add("rest_width", rest_width);
  rep.add("rest_clock", rest_clock);
  rep.check("rest_clock_matches_omega0", std::abs(rest_clock / omega0 - 1.0) < tol);

  Series summary{"relativity", "v,gamma,width_ratio,clock_ratio,omega,k,omega_measured,k_measured,P_over_Qdot,E", {}};
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    const double v = speeds[i];
    const std::string tag = speed_tag(v);
    const double g = gamma(v);
    const BoostedWave wave = lorentz_wave_numbers(omega0, v);
    const KgRun r = v == 0.0 ? rest : run_boosted(cfg, model, p, grid, omega0, v, window);
    if (r.traj.aborted) rep.notes.push_back("v = " + format_real(v) + ": " + r.traj.reason);

    // (omega, k) read off the constructed data at the peak node.
    std::size_t node = 0;
    for (std::size_t n = 1; n < grid.size(); ++n)
      if (std::abs(r.initial.psi[n]) > std::abs(r.initial.psi[node])) node = n;
    const cplx psi = r.initial.psi[node];
    const double omega_measured = -(r.initial.psi_t[node] / psi).imag();
    const double k_measured = (std::conj(psi) * gradient(r.initial.psi)[0][node]).imag() / std::norm(psi);

    const ComplexField& last = r.traj.snapshots.back();
    const double width_ratio = half_max_width(last, locate_peak(last)) / rest_width;
    const double clock_ratio = clock_frequency(r.traj, window) / omega0;
    const double qdot = fitted_speed(r.traj.rows, fit_window);
    const double P = r.traj.rows.back().momentum[0], E = r.traj.rows.back().energy;
    const double mass = v == 0.0 ? E : P / qdot;

    rep.add("speed" + tag, v);
    rep.add("gamma" + tag, g);
    rep.add("omega" + tag, wave.omega);
    rep.add("k" + tag, wave.k);
    rep.add("omega_measured" + tag, omega_measured);
    rep.add("k_measured" + tag, k_measured);
    rep.add("width_ratio" + tag, width_ratio);
    rep.add("clock_ratio" + tag, clock_ratio);
    rep.add("fitted_speed" + tag, qdot);
    rep.add("energy" + tag, E);
    rep.add("P_over_Qdot" + tag, mass);
    rep.check("construction" + tag, std::abs(omega_measured - wave.omega) < tol * wave.omega &&
                                        std::abs(k_measured - wave.k) < tol * std::max(wave.k, 1.0));
    rep.check("contraction" + tag, !r.traj.aborted && std::abs(width_ratio - 1.0 / g) < tol / g);
    rep.check("time_dilation" + tag, !r.traj.aborted && std::abs(clock_ratio - 1.0 / g) < tol / g);
    rep.check("mass_equals_energy" + tag, !r.traj.aborted && std::abs(mass - E) < tol * std::abs(E));
    if (v != 0.0) rep.check("de_broglie" + tag, std::abs(k_measured / omega_measured - v) < tol * v, false);
    summary.rows.push_back({v, g, width_ratio, clock_ratio, wave.omega, wave.k, omega_measured, k_measured, mass, E});
  }
  rep.series.push_back(std::move(summary));
  return rep;
}

Report experiment_hylomorphy_scan(const Config& cfg) {
  Report rep = make_report("hylomorphy_scan", cfg);
  const NonlinearModel model = model_from_config(cfg);
  const Grid grid = grid_from_config(cfg);
  const double E0 = model.rest_energy();
  const bool ns = model.equation() == Equation::ns;
  const double m = std::sqrt(model.a());
  auto lambda_of = [&](const ComplexField& psi) {
    if (ns) return hylomorphy_ratio(NSState{psi, 0.0}, model);
    return hylomorphy_ratio(KGState{psi, psi * cplx{0.0, -m}, 0.0}, model);
  };

  Series scan{"scan", "R,eps,Lambda", {}};
  double best = std::numeric_limits<double>::infinity();
  for (double R : cfg.reals("scan.R")) {
    ComplexField bump;
    try {
      bump = trapezoid_bump(grid, R);
    } catch (const Error& e) {
      rep.notes.push_back("R = " + format_real(R) + " skipped: " + e.what());
      continue;
    }
    for (double eps : cfg.reals("scan.eps")) {
      const double lam = lambda_of(bump * cplx{eps, 0.0});
      scan.rows.push_back({R, eps, lam});
      best = std::min(best, lam);
    }
  }
  require(!scan.rows.empty(), ErrorCode::config_error, "no bump radius fits in the box");
  rep.series.push_back(std::move(scan));
  rep.add("E0", E0);
  rep.add("scan_infimum", best);
  rep.add("scan_relative_gap", std::abs(best - E0) / E0);
  rep.check("scan_reaches_E0", std::abs(best - E0) / E0 < cfg.real("scan.tol"));

  const double omega = cfg.real("groundstate.omega");
  const RadialProfile p = solve_profile(cfg, model, omega, grid.dim());
  const double lam_gs = ns ? hylomorphy_ratio(standing_wave_ns(p, grid, {0.0, 0.0, 0.0}), model)
                           : hylomorphy_ratio(standing_wave_nkg(p, grid, {0.0, 0.0, 0.0}), model);
  rep.add("groundstate_lambda", lam_gs);
  rep.check("groundstate_below_E0", lam_gs < E0);
  rep.profiles.push_back(p);
  return rep;
}

Report run_experiment(const std::string& name, const Config& cfg) {
  if (name == "groundstate") return experiment_groundstate(cfg);
  if (name == "stability") return experiment_stability(cfg);
  if (name == "travel") return experiment_travel(cfg);
  if (name == "potential_dynamics") return experiment_potential_dynamics(cfg);
  if (name == "relativity") return experiment_relativity(cfg);
  if (name == "hylomorphy_scan") return experiment_hylomorphy_scan(cfg);
  fail(ErrorCode::config_error, "unknown experiment '" + name + "'");
}

Report run_evolve(const Config& cfg) {
  Report rep = make_report("evolve", cfg);
  const NonlinearModel model = model_from_config(cfg);
  const Grid grid = grid_from_config(cfg);
  const EvolveConfig ec = evolve_from_config(cfg);
  const bool plane = cfg.text("initial.kind") == "plane_wave";
  const double k = cfg.real("initial.k");
  const double v = cfg.real("boost.v");
  const Point x0 = cfg.point("boost.center");
  Trajectory traj;
  if (model.equation() == Equation::ns) {
    const ExternalPotential V = potential_from_config(cfg);
    NSState s;
    if (plane) {
      s.psi = ComplexField::from_function(grid, [&](const Point& x) { return std::polar(1.0, k * x[0]); });
    } else {
      const RadialProfile p = solve_profile(cfg, model, cfg.real("groundstate.omega"), grid.dim());
      s = galilean_boost(standing_wave_ns(p, grid, {0.0, 0.0, 0.0}, cfg.real("boost.theta")), {v, 0.0, 0.0}, x0);
      rep.profiles.push_back(p);
    }
    traj = run(s, model, V, ec);
  } else {
    KGState s;
    if (plane) {
      const double omega = std::sqrt(k * k + model.a());
      s.psi = ComplexField::from_function(grid, [&](const Point& x) { return std::polar(1.0, k * x[0]); });
      s.psi_t = s.psi * cplx{0.0, -omega};
    } else {
      const double omega0 = base_frequency(cfg);
      const RadialProfile p = solve_profile(cfg, model, omega0, grid.dim());
      s = lorentz_boost_initialdata(p, grid, omega0, v, x0, cfg.real("boost.theta"));
      rep.profiles.push_back(p);
    }
    traj = run(s, model, ec);
  }
  const double e_drift = max_relative_drift(traj.rows, &DiagnosticsRow::energy);
  const double h_drift = max_relative_drift(traj.rows, &DiagnosticsRow::charge);
  rep.add("energy_drift", e_drift);
  rep.add("charge_drift", h_drift);
  rep.add("final_time", traj.rows.back().t);
  if (traj.aborted) rep.notes.push_back(traj.reason);
  const double tol = cfg.real("evolve.drift_tol");
  rep.check("completed", !traj.aborted);
  rep.check("energy_conserved", e_drift < tol);
  rep.check("charge_conserved", h_drift < tol);
  rep.series.push_back(diagnostics_series("diagnostics", traj.rows));
  return rep;
}

void validate_config(const Config& cfg) {
  if (!cfg.text("experiment").empty()) {
    const auto& names = experiment_names();
    require(std::find(names.begin(), names.end(), cfg.text("experiment")) != names.end(), ErrorCode::config_error,
            "unknown experiment '" + cfg.text("experiment") + "'");
  }
  grid_from_config(cfg);
  model_from_config(cfg);
  potential_from_config(cfg);
  groundstate_options(cfg);
  evolve_from_config(cfg);
}

std::string report_json(const Report& report, const Config& cfg) {
  nlohmann::ordered_json j;
  j["experiment"] = report.experiment;
  j["config_hash"] = report.config_hash;
  j["result"] = report.pass() ? "PASS" : "FAIL";
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.metrics) {
    if (std::isfinite(v)) {
      metrics[k] = v;
    } else {
      metrics[k] = std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    }
  }
  j["metrics"] = metrics;
  nlohmann::ordered_json verdicts = nlohmann::ordered_json::object();
  for (const auto& v : report.verdicts) verdicts[v.name] = {{"pass", v.value}, {"gating", v.gating}};
  j["verdicts"] = verdicts;
  j["notes"] = report.notes;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& spec : config_schema()) config[spec.key] = cfg.text(spec.key);
  j["config"] = config;
  return j.dump(2);
}

void write_report(const Report& report, const Config& cfg, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "report.json");
    require(out.good(), ErrorCode::io_error, "cannot write report.json in '" + dir.string() + "'");
    out << report_json(report, cfg) << '\n';
  }
  for (const auto& s : report.series) {
    std::ofstream out(dir / (s.name + ".csv"));
    require(out.good(), ErrorCode::io_error, "cannot write " + s.name + ".csv");
    out << "# config_hash=" << report.config_hash << '\n' << s.header << '\n';
    for (const auto& row : s.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_real(row[i]);
      out << '\n';
    }
  }
  for (std::size_t i = 0; i < report.profiles.size(); ++i) {
    write_profile(dir / (i == 0 ? std::string("profile.csv") : "profile_" + std::to_string(i) + ".csv"),
                  report.profiles[i]);
  }
}

}  // namespace hylos
