#include "hylos/config.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hylos/error.hpp"

namespace hylos {

const std::vector<KeySpec>& config_schema() {
  using enum KeyType;
  static const std::vector<KeySpec> schema = {
      {"experiment", text, "", "experiment name (overridden by the CLI argument)"},
      {"seed", integer, "1", "seed for perturbation noise"},
      {"output.dir", text, "", "directory for reports and CSV files"},
      {"grid.dim", integer, "1", "spatial dimension 1..3"},
      {"grid.n", integer, "1024", "nodes per axis (power of two)"},
      {"grid.L", real, "40", "box length per axis"},
      {"model.equation", text, "ns", "ns | nkg"},
      {"model.family", text, "power_focusing", "power_focusing | double_power | saturating_intro"},
      {"model.a", real, "2", "quadratic coefficient (m^2 for nkg)"},
      {"model.p", real, "4", "focusing exponent"},
      {"model.q", real, "6", "defocusing exponent (double_power)"},
      {"model.c_p", real, "1", "focusing coefficient"},
      {"model.c_q", real, "0", "defocusing coefficient (double_power)"},
      {"potential.kind", text, "zero", "zero | harmonic"},
      {"potential.kappa", real, "1", "harmonic stiffness, V = kappa |x|^2 / 2"},
      {"groundstate.omega", real, "0.5", "standing-wave frequency"},
      {"groundstate.h_r", real, "1e-3", "radial step"},
      {"groundstate.r_max", real, "30", "radial extent"},
      {"groundstate.u0_max", real, "100", "upper end of the amplitude bracket scan"},
      {"groundstate.pohozaev_tol", real, "1e-3", "Derrick-Pohozaev acceptance gate"},
      {"boost.v", real, "0", "boost speed along axis 1"},
      {"boost.omega0", real, "", "rest frequency of the boosted wave (defaults to groundstate.omega)"},
      {"boost.center", real_list, "0", "initial center, one value per axis"},
      {"boost.theta", real, "0", "initial phase"},
      {"evolve.dt", real, "1e-3", "time step"},
      {"evolve.t_end", real, "10", "final time"},
      {"evolve.snapshot_every", integer, "0", "steps between field snapshots (0 = none)"},
      {"evolve.diagnostic_every", integer, "100", "steps between diagnostics rows"},
      {"evolve.blowup", real, "1e6", "abort when max|psi| exceeds this factor times the initial max"},
      {"evolve.drift_tol", real, "1e-6", "relative E and H drift accepted by `hylos evolve`"},
      {"initial.kind", text, "ground_state", "ground_state | plane_wave (evolve subcommand)"},
      {"initial.k", real, "1", "plane-wave wavenumber along axis 1"},
      {"semiclassical.h", real_list, "0.5,0.25,0.125", "ladder of h values"},
      {"semiclassical.alpha", real, "2", "exponent alpha"},
      {"semiclassical.gamma_exp", real, "1", "exponent gamma"},
      {"semiclassical.q0", real_list, "2", "initial barycenter"},
      {"semiclassical.v0", real_list, "0", "initial velocity"},
      {"semiclassical.periods", real, "2", "oscillation periods to simulate"},
      {"semiclassical.dt_factor", real, "0.01", "time step as a multiple of h^2"},
      {"semiclassical.w0_scale", real, "0.1", "constant C in the perturbation bounds"},
      {"semiclassical.amplitude_tol", real, "0.05", "finest-level deviation relative to the oscillation amplitude"},
      {"semiclassical.free_tol", real, "1e-3", "deviation allowed from the straight line when V = 0"},
      {"stability.noise", real, "0.01", "relative size of the seeded perturbation"},
      {"stability.liapunov_factor", real, "4", "allowed growth of the Liapunov value"},
      {"stability.peak_floor", real, "0.5", "fraction of the initial peak that must persist"},
      {"stability.drift_tol", real, "1e-6", "(E,H) sup-distance allowed for the unperturbed run"},
      {"travel.window", integer, "50", "diagnostics rows used in velocity fits"},
      {"travel.speed_tol", real, "1e-3", "fitted speed vs boost speed"},
      {"travel.identity_tol", real, "1e-3", "fitted speed vs P/H (ns) or P/E (nkg)"},
      {"relativity.v", real_list, "0.3,0.6", "boost speeds"},
      {"relativity.tol", real, "0.01", "relative tolerance of width, clock and mass checks"},
      {"relativity.ns_tol", real, "1e-6", "tolerance of P/qdot = H for ns"},
      {"relativity.window", integer, "200", "snapshots in the clock-phase regression"},
      {"scan.eps", real_list, "1e-3,1e-2", "amplitudes of the trapezoid bumps"},
      {"scan.R", real_list, "4,8,12,16", "plateau radii of the trapezoid bumps"},
      {"scan.tol", real, "0.05", "relative distance of the scan infimum from E0"},
  };
  return schema;
}

namespace {

const KeySpec& spec_for(const std::string& key) {
  const auto& s = config_schema();
  const auto it = std::find_if(s.begin(), s.end(), [&](const KeySpec& k) { return k.key == key; });
  require(it != s.end(), ErrorCode::config_error, "unknown key '" + key + "'");
  return *it;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return *end == '\0';
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    require(parse_double(trim(item), v), ErrorCode::config_error, "'" + key + "' expects comma-separated reals");
    out.push_back(v);
  }
  require(!out.empty(), ErrorCode::config_error, "'" + key + "' is an empty list");
  return out;
}

void check_value(const KeySpec& spec, const std::string& value) {
  double v = 0.0;
  switch (spec.type) {
    case KeyType::real:
      require(parse_double(value, v), ErrorCode::config_error, "'" + spec.key + "' expects a real, got '" + value + "'");
      break;
    case KeyType::integer: {
      char* end = nullptr;
      std::strtol(value.c_str(), &end, 10);
      require(!value.empty() && *end == '\0', ErrorCode::config_error,
              "'" + spec.key + "' expects an integer, got '" + value + "'");
      break;
    }
    case KeyType::real_list: parse_list(spec.key, value); break;
    case KeyType::text: break;
  }
  auto one_of = [&](std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
      if (value == a) return;
    fail(ErrorCode::config_error, "'" + spec.key + "' has unsupported value '" + value + "'");
  };
  if (spec.key == "model.equation") one_of({"ns", "nkg"});
  if (spec.key == "model.family") one_of({"power_focusing", "double_power", "saturating_intro"});
  if (spec.key == "potential.kind") one_of({"zero", "harmonic"});
  if (spec.key == "initial.kind") one_of({"ground_state", "plane_wave"});
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& origin) {
  Config cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    require(eq != std::string::npos, ErrorCode::config_error, where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    require(!cfg.has(key), ErrorCode::config_error, where + ": duplicate key '" + key + "'");
    try {
      cfg.set(key, value);
    } catch (const Error& e) {
      fail(ErrorCode::config_error, where + ": " + e.what());
    }
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::io_error, "cannot open config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

void Config::set(const std::string& key, const std::string& value) {
  check_value(spec_for(key), value);
  values_[key] = value;
}

std::string Config::text(const std::string& key) const {
  const auto& spec = spec_for(key);
  const auto it = values_.find(key);
  return it != values_.end() ? it->second : spec.fallback;
}

double Config::real(const std::string& key) const {
  const std::string v = text(key);
  require(!v.empty(), ErrorCode::config_error, "missing required key '" + key + "'");
  return std::strtod(v.c_str(), nullptr);
}

long Config::integer(const std::string& key) const {
  const std::string v = text(key);
  require(!v.empty(), ErrorCode::config_error, "missing required key '" + key + "'");
  return std::strtol(v.c_str(), nullptr, 10);
}

std::vector<double> Config::reals(const std::string& key) const { return parse_list(key, text(key)); }

Point Config::point(const std::string& key) const {
  const auto v = reals(key);
  require(v.size() <= 3, ErrorCode::config_error, "'" + key + "' has more than three components");
  Point p{0.0, 0.0, 0.0};
  std::copy(v.begin(), v.end(), p.begin());
  return p;
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& spec : config_schema()) out += spec.key + " = " + text(spec.key) + "\n";
  return out;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string Config::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical())));
  return buf;
}

}  // namespace hylos
