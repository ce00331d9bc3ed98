/* C interface to the hylos library. All objects are opaque handles owned by
 * the caller and released with the matching *_free function. Functions
 * return HYLOS_OK or an error code; hylos_last_error() describes the most
 * recent failure on the calling thread. */
#ifndef HYLOS_H
#define HYLOS_H

#include <stddef.h>

#if defined(HYLOS_BUILDING_LIBRARY)
#define HYLOS_API __attribute__((visibility("default")))
#else
#define HYLOS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hylos_status {
  HYLOS_OK = 0,
  HYLOS_ERR_INVALID_ARGUMENT = 1,
  HYLOS_ERR_DEGENERATE_INPUT = 2,
  HYLOS_ERR_BRACKET_NOT_FOUND = 3,
  HYLOS_ERR_NUMERICAL_FAILURE = 4,
  HYLOS_ERR_IO = 5,
  HYLOS_ERR_CONFIG = 6,
  HYLOS_ERR_TAG_MISMATCH = 7,
  HYLOS_ERR_INTERNAL = 8
} hylos_status;

typedef enum hylos_equation { HYLOS_NS = 0, HYLOS_NKG = 1 } hylos_equation;
typedef enum hylos_family {
  HYLOS_POWER_FOCUSING = 0,
  HYLOS_DOUBLE_POWER = 1,
  HYLOS_SATURATING_INTRO = 2
} hylos_family;

typedef struct hylos_config hylos_config;
typedef struct hylos_report hylos_report;
typedef struct hylos_grid hylos_grid;
typedef struct hylos_model hylos_model;
typedef struct hylos_profile hylos_profile;
typedef struct hylos_state hylos_state;

typedef struct hylos_diagnostics {
  double t;
  double energy;
  double charge;
  double momentum[3];
  double angular_momentum[3];
  double lambda; /* NaN when the charge vanishes */
  double center[3];
  double bound_mass;
  double leakage;
} hylos_diagnostics;

HYLOS_API const char* hylos_last_error(void);
HYLOS_API const char* hylos_status_name(hylos_status status);

/* Configuration (flat `section.key = value` text). */
HYLOS_API hylos_status hylos_config_load(const char* path, hylos_config** out);
HYLOS_API hylos_status hylos_config_parse(const char* text, hylos_config** out);
HYLOS_API hylos_status hylos_config_set(hylos_config* cfg, const char* key, const char* value);
HYLOS_API hylos_status hylos_config_validate(const hylos_config* cfg);
HYLOS_API hylos_status hylos_config_get(const hylos_config* cfg, const char* key, char* buf, size_t len);
/* Writes 16 hex digits and a terminator; len must be >= 17. */
HYLOS_API hylos_status hylos_config_hash(const hylos_config* cfg, char* buf, size_t len);
HYLOS_API void hylos_config_free(hylos_config* cfg);

/* Experiments and runners. */
HYLOS_API size_t hylos_experiment_count(void);
HYLOS_API const char* hylos_experiment_name(size_t index);
HYLOS_API hylos_status hylos_run_experiment(const char* name, const hylos_config* cfg, hylos_report** out);
HYLOS_API hylos_status hylos_run_groundstate(const hylos_config* cfg, hylos_report** out);
HYLOS_API hylos_status hylos_run_evolve(const hylos_config* cfg, hylos_report** out);

HYLOS_API int hylos_report_passed(const hylos_report* report);
HYLOS_API size_t hylos_report_metric_count(const hylos_report* report);
HYLOS_API hylos_status hylos_report_metric_at(const hylos_report* report, size_t index, const char** name,
                                              double* value);
HYLOS_API hylos_status hylos_report_metric(const hylos_report* report, const char* name, double* value);
HYLOS_API size_t hylos_report_verdict_count(const hylos_report* report);
HYLOS_API hylos_status hylos_report_verdict_at(const hylos_report* report, size_t index, const char** name,
                                               int* passed, int* gating);
HYLOS_API size_t hylos_report_note_count(const hylos_report* report);
HYLOS_API const char* hylos_report_note_at(const hylos_report* report, size_t index);
/* Writes report.json plus CSV series and profiles into dir (created if needed). */
HYLOS_API hylos_status hylos_report_write(const hylos_report* report, const hylos_config* cfg, const char* dir);
HYLOS_API void hylos_report_free(hylos_report* report);

/* Low-level building blocks. */
HYLOS_API hylos_status hylos_grid_create(int dim, const double* lengths, const size_t* counts, hylos_grid** out);
HYLOS_API size_t hylos_grid_size(const hylos_grid* grid);
HYLOS_API void hylos_grid_free(hylos_grid* grid);

HYLOS_API hylos_status hylos_model_create(hylos_equation equation, hylos_family family, double a, double p, double q,
                                          double c_p, double c_q, hylos_model** out);
HYLOS_API double hylos_model_rest_energy(const hylos_model* model);
HYLOS_API void hylos_model_free(hylos_model* model);

HYLOS_API hylos_status hylos_ground_state(const hylos_model* model, double omega, int dim, hylos_profile** out);
HYLOS_API hylos_status hylos_profile_info(const hylos_profile* profile, double* u0, double* sigma, double* omega);
HYLOS_API hylos_status hylos_profile_value(const hylos_profile* profile, double radius, double* out);
HYLOS_API void hylos_profile_free(hylos_profile* profile);

/* Standing wave u(|x - center|) e^{i theta}; NS or NKG according to the profile. */
HYLOS_API hylos_status hylos_standing_wave(const hylos_profile* profile, const hylos_grid* grid, const double* center,
                                           double theta, hylos_state** out);
HYLOS_API hylos_status hylos_state_evolve(hylos_state* state, const hylos_model* model, double dt, long steps);
HYLOS_API hylos_status hylos_state_diagnostics(const hylos_state* state, const hylos_model* model,
                                               hylos_diagnostics* out);
/* Copies psi as interleaved (re, im) pairs; len counts doubles and must be 2 * grid size. */
HYLOS_API hylos_status hylos_state_field(const hylos_state* state, double* out, size_t len);
HYLOS_API void hylos_state_free(hylos_state* state);

#ifdef __cplusplus
}
#endif

#endif /* HYLOS_H */
