// Command-line front end; everything runs through the hercules C API.

#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "hercules/hercules.h"

int main(int argc, char** argv) {
  CLI::App app{"hercules: row-column ultrasound simulation and reconstruction"};
  app.set_version_flag("--version", std::string("hercules ") + herc_version());

  std::string config_path;
  std::string out_dir;
  std::string stage;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
  bool threads_set = false;

  app.add_option("--config", config_path, "experiment config file");
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_option("--seed", seed, "noise seed (overrides the config)")
      ->each([&](const std::string&) { seed_set = true; });
  app.add_option("--threads", threads, "worker threads (overrides the config)")
      ->each([&](const std::string&) { threads_set = true; });
  app.add_option("--stage", stage,
                 "run one stage: simulate, reconstruct, metrics or report (default: all)");

  CLI11_PARSE(app, argc, argv);

  // report over an existing directory needs no config
  if (config_path.empty() && stage == "report" && !out_dir.empty()) {
    auto st = herc_report_directory(out_dir.c_str());
    if (st != HERC_OK) {
      std::fprintf(stderr, "herc: %s: %s\n", herc_status_name(st), herc_last_error());
    }
    return static_cast<int>(st);
  }

  if (config_path.empty()) {
    std::fprintf(stderr, "herc: --config is required (or --stage report with --out)\n");
    return static_cast<int>(HERC_ERR_VALIDATION);
  }

  herc_experiment* exp = nullptr;
  auto st = herc_experiment_open(config_path.c_str(), &exp);
  if (st != HERC_OK) {
    std::fprintf(stderr, "herc: %s: %s\n", herc_status_name(st), herc_last_error());
    return static_cast<int>(st);
  }
  if (!out_dir.empty()) herc_experiment_set_output_dir(exp, out_dir.c_str());
  if (seed_set) herc_experiment_set_seed(exp, seed);
  if (threads_set) herc_experiment_set_threads(exp, threads);

  st = stage.empty() ? herc_experiment_run(exp) : herc_experiment_run_stage(exp, stage.c_str());
  if (st != HERC_OK) {
    std::fprintf(stderr, "herc: %s: %s\n", herc_status_name(st), herc_experiment_error(exp));
  }
  herc_experiment_close(exp);
  return static_cast<int>(st);
}
