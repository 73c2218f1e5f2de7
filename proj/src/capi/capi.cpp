#include "hercules/hercules.h"

#include <exception>
#include <string>

#include "core/config.hpp"
#include "core/containers.hpp"
#include "core/error.hpp"
#include "core/experiment.hpp"
#include "core/hadamard.hpp"

using herc::Error;
using herc::ErrorKind;

struct herc_experiment {
  herc::ExperimentConfig config;
  std::string last_error;
};

namespace {

thread_local std::string g_last_error;

herc_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Validation: return HERC_ERR_VALIDATION;
    case ErrorKind::Runtime: return HERC_ERR_RUNTIME;
    case ErrorKind::Io: return HERC_ERR_IO;
  }
  return HERC_ERR_RUNTIME;
}

template <typename Fn>
herc_status guarded(std::string* sink, Fn&& fn) {
  try {
    fn();
    if (sink != nullptr) sink->clear();
    return HERC_OK;
  } catch (const Error& e) {
    if (sink != nullptr) *sink = e.what();
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    if (sink != nullptr) *sink = e.what();
    g_last_error = e.what();
    return HERC_ERR_RUNTIME;
  }
}

}  // namespace

extern "C" {

const char* herc_version(void) { return "1.0.0"; }

const char* herc_status_name(herc_status status) {
  switch (status) {
    case HERC_OK: return "ok";
    case HERC_ERR_VALIDATION: return "validation error";
    case HERC_ERR_RUNTIME: return "runtime error";
    case HERC_ERR_IO: return "io error";
  }
  return "unknown";
}

const char* herc_last_error(void) { return g_last_error.c_str(); }

herc_status herc_experiment_open(const char* config_path, herc_experiment** out) {
  if (out == nullptr) {
    g_last_error = "herc_experiment_open: out pointer is null";
    return HERC_ERR_VALIDATION;
  }
  *out = nullptr;
  if (config_path == nullptr) {
    g_last_error = "herc_experiment_open: config_path is null";
    return HERC_ERR_VALIDATION;
  }
  auto* exp = new herc_experiment{};
  auto st = guarded(&exp->last_error, [&] { exp->config = herc::load_config(config_path); });
  if (st != HERC_OK) {
    delete exp;
    return st;
  }
  *out = exp;
  return HERC_OK;
}

void herc_experiment_close(herc_experiment* exp) { delete exp; }

const char* herc_experiment_error(const herc_experiment* exp) {
  return exp != nullptr ? exp->last_error.c_str() : "null experiment handle";
}

herc_status herc_experiment_set_output_dir(herc_experiment* exp, const char* dir) {
  if (exp == nullptr || dir == nullptr) return HERC_ERR_VALIDATION;
  exp->config.output_dir = dir;
  return HERC_OK;
}

herc_status herc_experiment_set_seed(herc_experiment* exp, uint64_t seed) {
  if (exp == nullptr) return HERC_ERR_VALIDATION;
  exp->config.seed = seed;
  return HERC_OK;
}

herc_status herc_experiment_set_threads(herc_experiment* exp, int threads) {
  if (exp == nullptr) return HERC_ERR_VALIDATION;
  exp->config.threads = threads;
  return HERC_OK;
}

herc_status herc_experiment_run(herc_experiment* exp) {
  if (exp == nullptr) return HERC_ERR_VALIDATION;
  return guarded(&exp->last_error, [&] { herc::run_experiment(exp->config); });
}

herc_status herc_experiment_run_stage(herc_experiment* exp, const char* stage) {
  if (exp == nullptr) return HERC_ERR_VALIDATION;
  if (stage == nullptr) {
    exp->last_error = "run_stage: stage name is null";
    return HERC_ERR_VALIDATION;
  }
  return guarded(&exp->last_error,
                 [&] { herc::run_stage(exp->config, herc::parse_stage(stage)); });
}

herc_status herc_report_directory(const char* directory) {
  if (directory == nullptr) {
    g_last_error = "report: directory is null";
    return HERC_ERR_VALIDATION;
  }
  return guarded(nullptr, [&] { herc::write_report(directory); });
}

herc_status herc_export_bias_schedule(int order, const char* csv_path) {
  if (csv_path == nullptr) {
    g_last_error = "export_bias_schedule: path is null";
    return HERC_ERR_VALIDATION;
  }
  return guarded(nullptr, [&] {
    auto schedule = herc::BiasSchedule::from_order(order);
    herc::write_text_file(herc::bias_schedule_csv(schedule), csv_path);
  });
}

}  // extern "C"
