// Acceptance driver: one PASS/FAIL line per criterion. Tolerances live here,
// not in the configs, so that loosening a config cannot loosen a criterion.
//
// usage: hylos_acceptance <configs dir> [out dir]
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "hylos/config.hpp"
#include "hylos/evolve.hpp"
#include "hylos/groundstate.hpp"
#include "hylos/lab.hpp"
#include "hylos/observables.hpp"
#include "hylos/symmetry.hpp"

using namespace hylos;
namespace fs = std::filesystem;

namespace {

// 1. conservation
constexpr double kNsChargeDrift = 1e-12;
constexpr double kNsEnergyDrift = 1e-8;
constexpr double kNsMomentumDrift = 1e-10;
constexpr double kNkgDrift = 1e-6;
// 2. shooting
constexpr double kSechAmplitude = 1e-5;
constexpr double kSechSup = 1e-5;
constexpr double kPohozaev1D = 1e-6;
constexpr double kPohozaev3D = 1e-3;
// 3. threshold
constexpr double kScanGap = 0.05;
// 4. travel
constexpr double kNsSpeedLo = 0.299, kNsSpeedHi = 0.301;
constexpr double kNsMomentumRatio = 1e-6;
constexpr double kNkgSpeedLo = 0.495, kNkgSpeedHi = 0.505;
constexpr double kNkgMomentumRatio = 0.01;
// 5. relativity at v = 0.6
constexpr double kContraction = 0.8, kContractionTol = 0.008;
constexpr double kDilation = 0.8, kDilationTol = 0.008;
constexpr double kOmega = 1.25, kK = 0.75, kWaveTol = 1e-12;
constexpr double kNsMass = 1e-6;
constexpr double kNkgMass = 0.01;
// 6. semiclassical
constexpr double kAmplitudeFraction = 0.05;
// 7. stability
constexpr double kLiapunovFactor = 4.0;
constexpr double kPeakFloor = 0.5;
// 8. continuity
constexpr double kContinuity = 1e-4;
constexpr double kDivergence = 1e-10;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

fs::path g_configs;
fs::path g_out;

Report experiment(const std::string& file) {
  const Config cfg = Config::load(g_configs / file);
  Report rep = run_experiment(cfg.text("experiment"), cfg);
  if (!g_out.empty()) write_report(rep, cfg, g_out / fs::path(file).stem());
  return rep;
}

NonlinearModel cubic() { return NonlinearModel::power_focusing(Equation::ns, 2.0, 4.0, 1.0); }

Grid line(std::size_t n, double L) {
  const double l[] = {L};
  const std::size_t c[] = {n};
  return Grid::make(1, l, c);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Outcome conservation() {
  const Grid g = line(1024, 40.0);
  GroundStateOptions opts;
  opts.r_max = 25.0;

  const RadialProfile ns_p = find_ground_state(cubic(), 0.5, 1, opts);
  EvolveConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 10.0;
  cfg.diagnostic_every = 100;
  const Trajectory ns = run(standing_wave_ns(ns_p, g, {0.0, 0.0, 0.0}), cubic(), ExternalPotential::zero(), cfg);
  double dH = 0.0, dE = 0.0, dP = 0.0;
  const auto& r0 = ns.rows.front();
  for (const auto& r : ns.rows) {
    dH = std::max(dH, rel(r.charge, r0.charge));
    dE = std::max(dE, rel(r.energy, r0.energy));
    dP = std::max(dP, std::abs(r.momentum[0] - r0.momentum[0]));
  }

  // NKG at omega/m = 0.8 so the tail fits the same box.
  const auto kg_m = NonlinearModel::power_focusing(Equation::nkg, 4.0, 4.0, 1.0);
  const RadialProfile kg_p = find_ground_state(kg_m, 1.6, 1, opts);
  cfg.dt = 5e-4;
  cfg.t_end = 20.0;
  cfg.diagnostic_every = 200;
  cfg.scheme = Scheme::nkg_leapfrog;
  const Trajectory kg = run(standing_wave_nkg(kg_p, g, {0.0, 0.0, 0.0}), kg_m, cfg);
  double kH = 0.0, kE = 0.0, kP = 0.0;
  const auto& k0 = kg.rows.front();
  for (const auto& r : kg.rows) {
    kH = std::max(kH, rel(r.charge, k0.charge));
    kE = std::max(kE, rel(r.energy, k0.energy));
    kP = std::max(kP, std::abs(r.momentum[0] - k0.momentum[0]));
  }

  Outcome o;
  o.pass = !ns.aborted && !kg.aborted && dH < kNsChargeDrift && dE < kNsEnergyDrift && dP < kNsMomentumDrift &&
           kH < kNkgDrift && kE < kNkgDrift && kP < kNkgDrift;
  o.detail = "NS dH/H=" + fmt("%.2e", dH) + " dE/E=" + fmt("%.2e", dE) + " dP=" + fmt("%.2e", dP) +
             "; NKG dE/E=" + fmt("%.2e", kE) + " dH/H=" + fmt("%.2e", kH) + " dP=" + fmt("%.2e", kP);
  return o;
}

Outcome shooting() {
  const RadialProfile p = find_ground_state(cubic(), 0.5, 1);
  double sup = 0.0;
  for (std::size_t i = 0; i < p.r.size(); ++i) sup = std::max(sup, std::abs(p.u[i] - std::sqrt(2.0) / std::cosh(p.r[i])));
  const double amp = std::abs(p.u0 - std::sqrt(2.0));
  const double poh1 = std::abs(derrick_pohozaev_residual(p, effective_G(cubic(), 0.5).G));

  GroundStateOptions o3;
  o3.r_max = 20.0;
  const RadialProfile q = find_ground_state(cubic(), 0.5, 3, o3);
  const double poh3 = std::abs(derrick_pohozaev_residual(q, effective_G(cubic(), 0.5).G));
  // Independent fine-step integration of the same shot must agree on u(0).
  GroundStateOptions fine = o3;
  fine.h_r = 0.25 * o3.h_r;
  const double u0_fine = find_ground_state(cubic(), 0.5, 3, fine).u0;

  Outcome o;
  o.pass = amp < kSechAmplitude && sup < kSechSup && poh1 < kPohozaev1D && poh3 < kPohozaev3D &&
           std::abs(q.u0 - u0_fine) < kSechAmplitude;
  o.detail = "|u0-sqrt2|=" + fmt("%.2e", amp) + " sup=" + fmt("%.2e", sup) + " DP1=" + fmt("%.2e", poh1) +
             " DP3=" + fmt("%.2e", poh3) + " u0(3D)=" + fmt("%.8f", q.u0) + " fine=" + fmt("%.8f", u0_fine);
  return o;
}

Outcome threshold() {
  const Report ns = experiment("scan_ns.cfg");
  const Report kg = experiment("scan_nkg.cfg");
  const double gap_ns = ns.metric("scan_relative_gap"), gap_kg = kg.metric("scan_relative_gap");
  const double lam_ns = ns.metric("groundstate_lambda"), lam_kg = kg.metric("groundstate_lambda");
  Outcome o;
  o.pass = gap_ns < kScanGap && gap_kg < kScanGap && lam_ns < ns.metric("E0") && lam_kg < kg.metric("E0");
  o.detail = "NS gap=" + fmt("%.4f", gap_ns) + " Lambda_gs=" + fmt("%.6f", lam_ns) + "<E0=" + fmt("%g", ns.metric("E0")) +
             "; NKG gap=" + fmt("%.4f", gap_kg) + " Lambda_gs=" + fmt("%.6f", lam_kg) + "<E0=" + fmt("%g", kg.metric("E0"));
  return o;
}

Outcome travel() {
  const Report ns = experiment("travel_ns.cfg");
  const Report kg = experiment("travel_nkg.cfg");
  const double qdot = ns.metric("fitted_speed"), p_h = ns.metric("P_over_H");
  const double Qdot = kg.metric("fitted_speed"), p_e = kg.metric("P_over_E");
  Outcome o;
  o.pass = qdot >= kNsSpeedLo && qdot <= kNsSpeedHi && std::abs(qdot - p_h) < kNsMomentumRatio && Qdot >= kNkgSpeedLo &&
           Qdot <= kNkgSpeedHi && rel(Qdot, p_e) < kNkgMomentumRatio;
  o.detail = "NS qdot=" + fmt("%.7f", qdot) + " P/H=" + fmt("%.7f", p_h) + "; NKG Qdot=" + fmt("%.7f", Qdot) +
             " P/E=" + fmt("%.7f", p_e);
  return o;
}

Outcome relativity() {
  const Report kg = experiment("relativity_nkg.cfg");
  const Report ns = experiment("relativity_ns.cfg");
  const double width = kg.metric("width_ratio_v0.6"), clock = kg.metric("clock_ratio_v0.6");
  const double w = kg.metric("omega_v0.6"), k = kg.metric("k_v0.6");
  const double wm = kg.metric("omega_measured_v0.6"), km = kg.metric("k_measured_v0.6");
  const double mass = kg.metric("P_over_Qdot_v0.6"), E = kg.metric("energy_v0.6");
  const double ns_mass = ns.metric("P_over_qdot_v0.6"), H = ns.metric("charge_v0.6");
  Outcome o;
  o.pass = std::abs(width - kContraction) <= kContractionTol && std::abs(clock - kDilation) <= kDilationTol &&
           std::abs(w - kOmega) < kWaveTol && std::abs(k - kK) < kWaveTol && rel(wm, kOmega) < kNkgMass &&
           rel(km, kK) < kNkgMass && rel(mass, E) < kNkgMass && std::abs(ns_mass - H) < kNsMass;
  o.detail = "width=" + fmt("%.6f", width) + " clock=" + fmt("%.6f", clock) + " (w,k)=(" + fmt("%.12g", w) + "," +
             fmt("%.12g", k) + ") measured=(" + fmt("%.5f", wm) + "," + fmt("%.5f", km) + ") P/Qdot=" + fmt("%.5f", mass) +
             " E=" + fmt("%.5f", E) + "; NS P/qdot-H=" + fmt("%.2e", ns_mass - H);
  return o;
}

Outcome semiclassical() {
  const Report r = experiment("potential_dynamics.cfg");
  const double d0 = r.metric("deviation_h0.5"), d1 = r.metric("deviation_h0.25"), d2 = r.metric("deviation_h0.125");
  const double amp = r.metric("oscillation_amplitude");
  Outcome o;
  o.pass = d1 < d0 && d2 < d1 && d2 < kAmplitudeFraction * amp;
  o.detail = "deviation h=0.5,0.25,0.125: " + fmt("%.5f", d0) + ", " + fmt("%.5f", d1) + ", " + fmt("%.5f", d2) +
             " (amplitude " + fmt("%g", amp) + ")";
  return o;
}

Outcome stability() {
  const Report r = experiment("stability.cfg");
  const double lv0 = r.metric("liapunov_initial"), lv = r.metric("liapunov_max");
  const double peak = r.metric("peak_min_ratio"), control = r.metric("control_peak_min_ratio");
  Outcome o;
  o.pass = lv < kLiapunovFactor * lv0 && peak > kPeakFloor && control < kPeakFloor;
  o.detail = "liapunov max/initial=" + fmt("%.3f", lv / lv0) + " peak_min=" + fmt("%.4f", peak) +
             " control_peak_min=" + fmt("%.4f", control);
  return o;
}

Outcome continuity() {
  const Grid g = line(1024, 40.0);
  GroundStateOptions opts;
  opts.r_max = 25.0;
  const RadialProfile p = find_ground_state(cubic(), 0.5, 1, opts);
  const NSState s = galilean_boost(standing_wave_ns(p, g, {0.0, 0.0, 0.0}), {0.3, 0.0, 0.0}, {-3.0, 0.0, 0.0});
  EvolveConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 2.0;
  cfg.diagnostic_every = 100;
  // Every step is a snapshot; pairs are consumed as they arrive.
  cfg.snapshot_every = 1;
  double worst = 0.0, prev_t = 0.0;
  std::size_t pairs = 0;
  ComplexField prev;
  Sinks sinks;
  sinks.keep_snapshots = false;
  sinks.on_snapshot = [&](double time, const ComplexField& f) {
    if (prev.size() != 0) {
      worst = std::max(worst, continuity_residual(prev, f, time - prev_t));
      ++pairs;
    }
    prev = f;
    prev_t = time;
  };
  const Trajectory t = run(s, cubic(), ExternalPotential::zero(), cfg, sinks);
  const auto j = charge_current(prev);
  const double div = std::abs(integrate(divergence(j, g), g));
  Outcome o;
  o.pass = !t.aborted && pairs > 1 && worst < kContinuity && div < kDivergence;
  o.detail = "max residual=" + fmt("%.2e", worst) + " over " + std::to_string(pairs) +
             " intervals; |int div(u^2 grad S)|=" + fmt("%.2e", div);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <configs dir> [out dir]\n", argv[0]);
    return 1;
  }
  g_configs = argv[1];
  if (argc > 2) g_out = argv[2];

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"conservation", conservation}, {"shooting oracle", shooting},   {"threshold E0", threshold},
      {"travel", travel},             {"relativity", relativity},     {"semiclassical", semiclassical},
      {"stability", stability},       {"continuity", continuity},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu %-16s %s  %s  [%.1fs]\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
