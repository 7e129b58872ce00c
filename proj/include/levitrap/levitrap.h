#ifndef LEVITRAP_H
#define LEVITRAP_H

#include <stddef.h>

#if defined(LEVITRAP_BUILDING_LIBRARY)
#define LT_API __attribute__((visibility("default")))
#else
#define LT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lt_status {
  LT_OK = 0,
  LT_INVALID_ARGUMENT = 1,
  LT_OUT_OF_RANGE = 2,
  LT_SINGULAR = 3,
  LT_NO_TRAP = 4,
  LT_CONVERGENCE = 5,
  LT_UNBOUNDED_HEATING = 6,
  LT_CONFIG = 7,
  LT_IO = 8,
  LT_UNKNOWN_SCENARIO = 9,
  LT_INTERNAL = 99
} lt_status;

typedef enum lt_output_kind {
  LT_OUTPUT_CSV = 0,
  LT_OUTPUT_SIDECAR = 1, /* JSON scalars that accompany the CSV */
  LT_OUTPUT_JSON = 2,    /* scalars and table in one document */
  LT_OUTPUT_CONFIG = 3   /* effective configuration */
} lt_output_kind;

typedef struct lt_scenario lt_scenario;

LT_API const char* lt_version(void);
LT_API const char* lt_status_string(lt_status status);
/* Message of the last failure on the calling thread; empty when none. */
LT_API const char* lt_last_error(void);

/* Embedded presets. */
LT_API size_t lt_scenario_count(void);
LT_API const char* lt_scenario_name(size_t index);

LT_API lt_status lt_scenario_create(const char* name, lt_scenario** out);
LT_API void lt_scenario_destroy(lt_scenario* scenario);
/* Merges key = value text onto the preset. */
LT_API lt_status lt_scenario_load_config(lt_scenario* scenario, const char* text);
LT_API lt_status lt_scenario_set(lt_scenario* scenario, const char* key, const char* value);
LT_API lt_status lt_scenario_set_jobs(lt_scenario* scenario, int jobs);
LT_API lt_status lt_scenario_run(lt_scenario* scenario);
/* Text stays valid until the next run or destroy. LT_OUTPUT_CONFIG works before a run. */
LT_API lt_status lt_scenario_output(lt_scenario* scenario, lt_output_kind kind, const char** text,
                                    size_t* length);

/* SiV fits, SI units. */
LT_API lt_status lt_siv_transition(double temperature, double* omega0);
LT_API lt_status lt_siv_linewidth(double temperature, double* gamma_natural);
LT_API lt_status lt_siv_dephasing(double temperature, double* gamma_transverse);
LT_API lt_status lt_quantum_polarizability(double detuning, double rabi, double linewidth,
                                           double transverse_decay, double dipole, double* alpha);
LT_API lt_status lt_steady_state_temperature(double radius, double environment_temperature,
                                             double intensity, double omega, double* temperature);

#ifdef __cplusplus
}
#endif

#endif
