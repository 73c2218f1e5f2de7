#pragma once

#include <string>

#include "core/config.hpp"

namespace herc {

enum class Stage { Simulate, Reconstruct, Metrics, Report };

Stage parse_stage(const std::string& name);

// Runs one stage for every configured scheme, reading inputs from and writing
// artifacts into <output_dir>/<scheme>/. Partial outputs of a failed stage are
// removed.
void run_stage(const ExperimentConfig& cfg, Stage stage);

// simulate -> reconstruct -> metrics -> report, then the run manifest.
void run_experiment(const ExperimentConfig& cfg);

// Merges every */metrics.txt under `directory` into one comparison table,
// sorted by scheme name; returns the table text and writes it to
// <directory>/report.txt.
std::string write_report(const std::string& directory);

}  // namespace herc
