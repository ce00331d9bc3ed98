#include "hylos/hylos.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>
#include <variant>

#include "hylos/config.hpp"
#include "hylos/error.hpp"
#include "hylos/evolve.hpp"
#include "hylos/groundstate.hpp"
#include "hylos/lab.hpp"
#include "hylos/symmetry.hpp"

struct hylos_config {
  hylos::Config cfg;
};
struct hylos_report {
  hylos::Report report;
};
struct hylos_grid {
  hylos::Grid grid;
};
struct hylos_model {
  hylos::NonlinearModel model;
};
struct hylos_profile {
  hylos::RadialProfile profile;
};
struct hylos_state {
  std::variant<hylos::NSState, hylos::KGState> state;
};

namespace {

thread_local std::string last_error;

hylos_status to_status(hylos::ErrorCode code) {
  using hylos::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return HYLOS_ERR_INVALID_ARGUMENT;
    case ErrorCode::degenerate_input: return HYLOS_ERR_DEGENERATE_INPUT;
    case ErrorCode::bracket_not_found: return HYLOS_ERR_BRACKET_NOT_FOUND;
    case ErrorCode::numerical_failure: return HYLOS_ERR_NUMERICAL_FAILURE;
    case ErrorCode::io_error: return HYLOS_ERR_IO;
    case ErrorCode::config_error: return HYLOS_ERR_CONFIG;
    case ErrorCode::tag_mismatch: return HYLOS_ERR_TAG_MISMATCH;
  }
  return HYLOS_ERR_INTERNAL;
}

template <class Fn>
hylos_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return HYLOS_OK;
  } catch (const hylos::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return HYLOS_ERR_INTERNAL;
}

void need(const void* p, const char* what) {
  hylos::require(p != nullptr, hylos::ErrorCode::invalid_argument, std::string(what) + " must not be null");
}

hylos_status copy_out(const std::string& s, char* buf, std::size_t len) {
  return guarded([&] {
    need(buf, "buffer");
    hylos::require(len > s.size(), hylos::ErrorCode::invalid_argument, "buffer too small");
    std::memcpy(buf, s.c_str(), s.size() + 1);
  });
}

}  // namespace

extern "C" {

const char* hylos_last_error(void) { return last_error.c_str(); }

const char* hylos_status_name(hylos_status status) {
  switch (status) {
    case HYLOS_OK: return "ok";
    case HYLOS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case HYLOS_ERR_DEGENERATE_INPUT: return "degenerate input";
    case HYLOS_ERR_BRACKET_NOT_FOUND: return "bracket not found";
    case HYLOS_ERR_NUMERICAL_FAILURE: return "numerical failure";
    case HYLOS_ERR_IO: return "i/o error";
    case HYLOS_ERR_CONFIG: return "config error";
    case HYLOS_ERR_TAG_MISMATCH: return "tag mismatch";
    case HYLOS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

hylos_status hylos_config_load(const char* path, hylos_config** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new hylos_config{hylos::Config::load(path)};
  });
}

hylos_status hylos_config_parse(const char* text, hylos_config** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new hylos_config{hylos::Config::parse(text)};
  });
}

hylos_status hylos_config_set(hylos_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    need(cfg, "config");
    need(key, "key");
    need(value, "value");
    cfg->cfg.set(key, value);
  });
}

hylos_status hylos_config_validate(const hylos_config* cfg) {
  return guarded([&] {
    need(cfg, "config");
    hylos::validate_config(cfg->cfg);
  });
}

hylos_status hylos_config_get(const hylos_config* cfg, const char* key, char* buf, size_t len) {
  std::string value;
  const hylos_status st = guarded([&] {
    need(cfg, "config");
    need(key, "key");
    value = cfg->cfg.text(key);
  });
  return st == HYLOS_OK ? copy_out(value, buf, len) : st;
}

hylos_status hylos_config_hash(const hylos_config* cfg, char* buf, size_t len) {
  std::string value;
  const hylos_status st = guarded([&] {
    need(cfg, "config");
    value = cfg->cfg.hash();
  });
  return st == HYLOS_OK ? copy_out(value, buf, len) : st;
}

void hylos_config_free(hylos_config* cfg) { delete cfg; }

size_t hylos_experiment_count(void) { return hylos::experiment_names().size(); }

const char* hylos_experiment_name(size_t index) {
  const auto& names = hylos::experiment_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

hylos_status hylos_run_experiment(const char* name, const hylos_config* cfg, hylos_report** out) {
  return guarded([&] {
    need(name, "name");
    need(cfg, "config");
    need(out, "out");
    *out = new hylos_report{hylos::run_experiment(name, cfg->cfg)};
  });
}

hylos_status hylos_run_groundstate(const hylos_config* cfg, hylos_report** out) {
  return hylos_run_experiment("groundstate", cfg, out);
}

hylos_status hylos_run_evolve(const hylos_config* cfg, hylos_report** out) {
  return guarded([&] {
    need(cfg, "config");
    need(out, "out");
    *out = new hylos_report{hylos::run_evolve(cfg->cfg)};
  });
}

int hylos_report_passed(const hylos_report* report) { return report && report->report.pass() ? 1 : 0; }

size_t hylos_report_metric_count(const hylos_report* report) { return report ? report->report.metrics.size() : 0; }

hylos_status hylos_report_metric_at(const hylos_report* report, size_t index, const char** name, double* value) {
  return guarded([&] {
    need(report, "report");
    hylos::require(index < report->report.metrics.size(), hylos::ErrorCode::invalid_argument, "metric index out of range");
    const auto& m = report->report.metrics[index];
    if (name) *name = m.first.c_str();
    if (value) *value = m.second;
  });
}

hylos_status hylos_report_metric(const hylos_report* report, const char* name, double* value) {
  return guarded([&] {
    need(report, "report");
    need(name, "name");
    need(value, "value");
    *value = report->report.metric(name);
  });
}

size_t hylos_report_verdict_count(const hylos_report* report) { return report ? report->report.verdicts.size() : 0; }

hylos_status hylos_report_verdict_at(const hylos_report* report, size_t index, const char** name, int* passed,
                                     int* gating) {
  return guarded([&] {
    need(report, "report");
    hylos::require(index < report->report.verdicts.size(), hylos::ErrorCode::invalid_argument,
                   "verdict index out of range");
    const auto& v = report->report.verdicts[index];
    if (name) *name = v.name.c_str();
    if (passed) *passed = v.value ? 1 : 0;
    if (gating) *gating = v.gating ? 1 : 0;
  });
}

size_t hylos_report_note_count(const hylos_report* report) { return report ? report->report.notes.size() : 0; }

const char* hylos_report_note_at(const hylos_report* report, size_t index) {
  if (!report || index >= report->report.notes.size()) return nullptr;
  return report->report.notes[index].c_str();
}

hylos_status hylos_report_write(const hylos_report* report, const hylos_config* cfg, const char* dir) {
  return guarded([&] {
    need(report, "report");
    need(cfg, "config");
    need(dir, "dir");
    hylos::write_report(report->report, cfg->cfg, dir);
  });
}

void hylos_report_free(hylos_report* report) { delete report; }

hylos_status hylos_grid_create(int dim, const double* lengths, const size_t* counts, hylos_grid** out) {
  return guarded([&] {
    need(lengths, "lengths");
    need(counts, "counts");
    need(out, "out");
    hylos::require(dim >= 1 && dim <= 3, hylos::ErrorCode::invalid_argument, "dimension must be 1, 2 or 3");
    const auto n = static_cast<std::size_t>(dim);
    *out = new hylos_grid{hylos::Grid::make(dim, {lengths, n}, {counts, n})};
  });
}

size_t hylos_grid_size(const hylos_grid* grid) { return grid ? grid->grid.size() : 0; }

void hylos_grid_free(hylos_grid* grid) { delete grid; }

hylos_status hylos_model_create(hylos_equation equation, hylos_family family, double a, double p, double q, double c_p,
                                double c_q, hylos_model** out) {
  return guarded([&] {
    need(out, "out");
    const auto eq = equation == HYLOS_NKG ? hylos::Equation::nkg : hylos::Equation::ns;
    switch (family) {
      case HYLOS_POWER_FOCUSING: *out = new hylos_model{hylos::NonlinearModel::power_focusing(eq, a, p, c_p)}; return;
      case HYLOS_DOUBLE_POWER:
        *out = new hylos_model{hylos::NonlinearModel::double_power(eq, a, p, q, c_p, c_q)};
        return;
      case HYLOS_SATURATING_INTRO: *out = new hylos_model{hylos::NonlinearModel::saturating_intro(eq, a)}; return;
    }
    hylos::fail(hylos::ErrorCode::invalid_argument, "unknown model family");
  });
}

double hylos_model_rest_energy(const hylos_model* model) { return model ? model->model.rest_energy() : NAN; }

void hylos_model_free(hylos_model* model) { delete model; }

hylos_status hylos_ground_state(const hylos_model* model, double omega, int dim, hylos_profile** out) {
  return guarded([&] {
    need(model, "model");
    need(out, "out");
    *out = new hylos_profile{hylos::find_ground_state(model->model, omega, dim)};
  });
}

hylos_status hylos_profile_info(const hylos_profile* profile, double* u0, double* sigma, double* omega) {
  return guarded([&] {
    need(profile, "profile");
    if (u0) *u0 = profile->profile.u0;
    if (sigma) *sigma = profile->profile.sigma;
    if (omega) *omega = profile->profile.omega;
  });
}

hylos_status hylos_profile_value(const hylos_profile* profile, double radius, double* out) {
  return guarded([&] {
    need(profile, "profile");
    need(out, "out");
    *out = profile->profile.value(radius);
  });
}

void hylos_profile_free(hylos_profile* profile) { delete profile; }

hylos_status hylos_standing_wave(const hylos_profile* profile, const hylos_grid* grid, const double* center,
                                 double theta, hylos_state** out) {
  return guarded([&] {
    need(profile, "profile");
    need(grid, "grid");
    need(out, "out");
    hylos::Point c{0.0, 0.0, 0.0};
    if (center)
      for (int d = 0; d < grid->grid.dim(); ++d) c[d] = center[d];
    if (profile->profile.equation == hylos::Equation::ns) {
      *out = new hylos_state{hylos::standing_wave_ns(profile->profile, grid->grid, c, theta)};
    } else {
      *out = new hylos_state{hylos::standing_wave_nkg(profile->profile, grid->grid, c, theta)};
    }
  });
}

hylos_status hylos_state_evolve(hylos_state* state, const hylos_model* model, double dt, long steps) {
  return guarded([&] {
    need(state, "state");
    need(model, "model");
    hylos::require(steps >= 0, hylos::ErrorCode::invalid_argument, "steps must be >= 0");
    if (auto* ns = std::get_if<hylos::NSState>(&state->state)) {
      hylos::NsStepper stepper(ns->psi.grid(), model->model, hylos::ExternalPotential::zero(), dt);
      for (long i = 0; i < steps; ++i) stepper.step(*ns);
      hylos::require(ns->psi.all_finite(), hylos::ErrorCode::numerical_failure, "non-finite field");
    } else {
      auto& kg = std::get<hylos::KGState>(state->state);
      hylos::NkgStepper stepper(kg.psi.grid(), model->model, dt);
      for (long i = 0; i < steps; ++i) stepper.step(kg);
      hylos::require(kg.psi.all_finite(), hylos::ErrorCode::numerical_failure, "non-finite field");
    }
  });
}

hylos_status hylos_state_diagnostics(const hylos_state* state, const hylos_model* model, hylos_diagnostics* out) {
  return guarded([&] {
    need(state, "state");
    need(model, "model");
    need(out, "out");
    const hylos::DiagnosticsRow r =
        std::visit([&](const auto& s) { return hylos::diagnose(s, model->model); }, state->state);
    out->t = r.t;
    out->energy = r.energy;
    out->charge = r.charge;
    for (int d = 0; d < 3; ++d) {
      out->momentum[d] = r.momentum[d];
      out->angular_momentum[d] = r.angular_momentum[d];
      out->center[d] = r.center[d];
    }
    out->lambda = r.lambda;
    out->bound_mass = r.bound_mass;
    out->leakage = r.leakage;
  });
}

hylos_status hylos_state_field(const hylos_state* state, double* out, size_t len) {
  return guarded([&] {
    need(state, "state");
    need(out, "out");
    const hylos::ComplexField& psi =
        std::visit([](const auto& s) -> const hylos::ComplexField& { return s.psi; }, state->state);
    hylos::require(len == 2 * psi.size(), hylos::ErrorCode::invalid_argument, "field buffer must hold 2 * size doubles");
    for (std::size_t n = 0; n < psi.size(); ++n) {
      out[2 * n] = psi[n].real();
      out[2 * n + 1] = psi[n].imag();
    }
  });
}

void hylos_state_free(hylos_state* state) { delete state; }

}  // extern "C"
