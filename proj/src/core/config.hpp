#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/beamform.hpp"
#include "core/excitation.hpp"
#include "core/geometry.hpp"
#include "core/metrics.hpp"
#include "core/scheme.hpp"

namespace herc {

struct ExcitationSettings {
  ExcitationKind kind = ExcitationKind::GatedSine;
  double cycles = 1.0;
  double f0 = 0.0;       // [Hz] chirp start
  double f1 = 0.0;       // [Hz] chirp end
  double duration = 0.0; // [s] chirp length
  double taper = 0.2;    // cosine ramp fraction per end
};

struct MetricsSettings {
  bool psf = true;
  bool cyst = false;
  Vec3 cyst_center;            // [m]
  double cyst_radius = 0.0;    // [m]
  double guard_scale = 1.3;    // guard radius = scale * cyst radius
  double outer_scale = 2.0;    // outer radius = scale * cyst radius
  double inner_scale = 0.7;    // inner radius = scale * cyst radius
  double cyst_length = 0.0;    // [m] cylinder extent along y
  int gcnr_bins = 100;
};

struct ExperimentConfig {
  ArrayGeometry geometry;
  std::vector<TransmitScheme> schemes;  // run in listed order
  ExcitationSettings excitation;
  std::string scene_path;  // absolute, resolved against the config directory
  double snr_db = 0.0;     // +inf disables noise
  GridSpec grid;
  RxApodization apod;
  double db_floor = -100.0;
  MetricsSettings metrics;
  std::string output_dir;  // default from config; CLI may override
  std::uint64_t seed = 1;
  int threads = 1;

  std::string config_path;
  std::uint64_t config_hash = 0;
};

ExperimentConfig load_config(const std::string& path);

// the built excitation waveform for this configuration
Excitation build_excitation(const ExperimentConfig& cfg);

CylinderRegionPair cyst_regions(const MetricsSettings& m);

}  // namespace herc
