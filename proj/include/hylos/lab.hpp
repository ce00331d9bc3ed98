#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hylos/config.hpp"
#include "hylos/evolve.hpp"
#include "hylos/groundstate.hpp"
#include "hylos/grid.hpp"
#include "hylos/models.hpp"

namespace hylos {

struct Verdict {
  std::string name;
  bool value = false;
  bool gating = true;  ///< informational verdicts do not enter the overall result
};

struct Series {
  std::string name;  ///< file stem
  std::string header;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string experiment;
  std::string config_hash;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;
  std::vector<Series> series;
  std::vector<RadialProfile> profiles;

  bool pass() const;
  double metric(const std::string& name) const;
  bool verdict(const std::string& name) const;
  void add(const std::string& name, double value) { metrics.emplace_back(name, value); }
  void check(const std::string& name, bool value, bool gating = true) { verdicts.push_back({name, value, gating}); }
};

const std::vector<std::string>& experiment_names();

Grid grid_from_config(const Config& cfg);
NonlinearModel model_from_config(const Config& cfg);
ExternalPotential potential_from_config(const Config& cfg);
GroundStateOptions groundstate_options(const Config& cfg);
EvolveConfig evolve_from_config(const Config& cfg);

/// u_R: 1 on |x| < R, 1 + R - |x| on R < |x| < R + 1, 0 beyond.
ComplexField trapezoid_bump(const Grid& grid, double R, const Point& center = {0.0, 0.0, 0.0});
/// Complex band-limited noise (|k| <= k_cut) with unit L2 norm, deterministic in seed.
ComplexField seeded_noise(const Grid& grid, unsigned long long seed, double k_cut);

/// Node of max |psi| refined per axis by a parabola through |psi|^2.
Point locate_peak(const ComplexField& field);
/// Width along axis 1 at half of the peak modulus, by trigonometric interpolation.
double half_max_width(const ComplexField& field, const Point& peak);
/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

Report experiment_groundstate(const Config& cfg);
Report experiment_stability(const Config& cfg);
Report experiment_travel(const Config& cfg);
Report experiment_potential_dynamics(const Config& cfg);
Report experiment_relativity(const Config& cfg);
Report experiment_hylomorphy_scan(const Config& cfg);

Report run_experiment(const std::string& name, const Config& cfg);
/// Integrates the configured initial state and checks E, H drift and the blow-up guard.
Report run_evolve(const Config& cfg);
/// Schema and value-domain checks only.
void validate_config(const Config& cfg);

/// Writes report.json, one CSV per series and profile files into dir.
void write_report(const Report& report, const Config& cfg, const std::filesystem::path& dir);
std::string report_json(const Report& report, const Config& cfg);

}  // namespace hylos
