/* Public C API of the hercules engine.
 *
 * The engine simulates bias-switchable row-column ultrasound acquisitions
 * (Hadamard-encoded read-out plus conventional VLS / tilted-plane-wave
 * schemes), reconstructs volumes, and measures image quality. All heavy
 * lifting lives behind this boundary; handles are opaque and every call
 * reports a herc_status.
 */
#ifndef HERCULES_H
#define HERCULES_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define HERC_API __declspec(dllexport)
#else
#define HERC_API __attribute__((visibility("default")))
#endif

typedef enum herc_status {
  HERC_OK = 0,
  HERC_ERR_VALIDATION = 1, /* bad config, bad arguments, bad dimensions */
  HERC_ERR_RUNTIME = 2,    /* numerical or resource failure while running */
  HERC_ERR_IO = 3          /* missing, unreadable or corrupt files */
} herc_status;

typedef struct herc_experiment herc_experiment;

HERC_API const char* herc_version(void);
HERC_API const char* herc_status_name(herc_status status);

/* Message of the most recent failure on this thread (handle-less calls). */
HERC_API const char* herc_last_error(void);

/* Parses and validates an experiment config file. On success *out owns the
 * experiment; release it with herc_experiment_close. */
HERC_API herc_status herc_experiment_open(const char* config_path, herc_experiment** out);
HERC_API void herc_experiment_close(herc_experiment* exp);

/* Message of the most recent failure on this handle. */
HERC_API const char* herc_experiment_error(const herc_experiment* exp);

HERC_API herc_status herc_experiment_set_output_dir(herc_experiment* exp, const char* dir);
HERC_API herc_status herc_experiment_set_seed(herc_experiment* exp, uint64_t seed);
HERC_API herc_status herc_experiment_set_threads(herc_experiment* exp, int threads);

/* Full pipeline: simulate, reconstruct, metrics, report, manifest. */
HERC_API herc_status herc_experiment_run(herc_experiment* exp);

/* One stage: "simulate", "reconstruct", "metrics" or "report". Stages
 * compose across processes through the documented file containers. */
HERC_API herc_status herc_experiment_run_stage(herc_experiment* exp, const char* stage);

/* Merges every <scheme>/metrics.txt under directory into one comparison
 * table, written to <directory>/report.txt. */
HERC_API herc_status herc_report_directory(const char* directory);

/* Writes the events x channels +/-1 bias table of a Hadamard read-out of the
 * given order (power of two) as CSV. */
HERC_API herc_status herc_export_bias_schedule(int order, const char* csv_path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HERCULES_H */
