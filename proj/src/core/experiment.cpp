#include "core/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <vector>

#include "core/containers.hpp"
#include "core/error.hpp"

namespace herc {

namespace fs = std::filesystem;

namespace {

constexpr double kSliceRangeDb = 60.0;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// removes this stage's outputs unless the stage completed
class ArtifactTracker {
 public:
  ~ArtifactTracker() {
    if (committed_) return;
    for (const auto& p : files_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }
  std::string track(const std::string& path) {
    files_.push_back(path);
    return path;
  }
  void commit() { committed_ = true; }

 private:
  std::vector<std::string> files_;
  bool committed_ = false;
};

void check_memory_budget(std::size_t bytes) {
  const char* cap = std::getenv("HERC_MAX_MEMORY_MB");
  if (cap == nullptr) return;
  char* end = nullptr;
  double mb = std::strtod(cap, &end);
  if (end == cap || mb <= 0.0) return;
  auto limit = static_cast<std::size_t>(mb * 1024.0 * 1024.0);
  if (bytes > limit) {
    throw Error::runtime("memory budget exceeded: stage needs about " +
                         std::to_string(bytes / (1024 * 1024) + 1) + " MB but HERC_MAX_MEMORY_MB=" +
                         std::string(cap));
  }
}

std::string scheme_dir(const ExperimentConfig& cfg, const TransmitScheme& s) {
  return (fs::path(cfg.output_dir) / scheme_name(s.kind)).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error::io("cannot create directory " + dir + ": " + ec.message());
}

void stage_simulate(const ExperimentConfig& cfg) {
  Scene scene = load_scene(cfg.scene_path, cfg.geometry.speed_of_sound);
  Excitation exc = build_excitation(cfg);
  for (std::size_t si = 0; si < cfg.schemes.size(); ++si) {
    const auto& scheme = cfg.schemes[si];
    ArtifactTracker tracker;
    ensure_dir(scheme_dir(cfg, scheme));
    int nt = required_time_samples(scene, cfg.geometry, scheme, exc);
    int n_rx = cfg.geometry.channel_count(orthogonal(scheme.tx_axis));
    check_memory_budget(static_cast<std::size_t>(scheme.n_events) * n_rx * nt * sizeof(double) * 2);

    ChannelData data;
    if (is_hero(scheme.kind)) {
      auto schedule = BiasSchedule::from_order(scheme.n_events);
      // encoding the per-element reference equals stacking per-event sums
      auto reference = simulate_matrix_reference(scene, cfg.geometry, scheme, exc, cfg.threads, nt);
      data.real_samples = encode(reference, schedule.hadamard);
      data.domain = ChannelData::Domain::EncodedChannels;
      data.scheme = scheme.kind;
      data.tx_axis = scheme.tx_axis;
      data.n_events = scheme.n_events;
      data.fs = exc.fs;
      data.t0 = 0.0;
      write_text_file(bias_schedule_csv(schedule),
                      tracker.track(scheme_dir(cfg, scheme) + "/bias_schedule.csv"));
    } else {
      data = simulate_events(scene, cfg.geometry, scheme, nullptr, exc, cfg.threads, nt);
    }
    if (std::isfinite(cfg.snr_db)) {
      add_noise(data, cfg.snr_db, cfg.seed + si);
    }
    write_channel_data(data, tracker.track(scheme_dir(cfg, scheme) + "/channel_data.rf"));
    tracker.commit();
  }
}

void stage_reconstruct(const ExperimentConfig& cfg) {
  Excitation exc = build_excitation(cfg);
  for (const auto& scheme : cfg.schemes) {
    ArtifactTracker tracker;
    auto dir = scheme_dir(cfg, scheme);
    auto raw = read_channel_data(dir + "/channel_data.rf");
    const auto& dims = raw.complex_samples ? raw.cplx_samples.dims : raw.real_samples.dims;
    check_memory_budget(dims[0] * dims[1] * dims[2] * sizeof(cplx) * 2 +
                        cfg.grid.size() * sizeof(cplx) * 2);
    auto complex_volume =
        reconstruct_complex(scheme, raw, exc, cfg.geometry, cfg.grid, cfg.apod, cfg.threads);
    auto db = envelope_db(complex_volume, cfg.db_floor);
    write_volume(db, tracker.track(dir + "/volume.vol"));
    write_db_slice_pgm(db, SlicePlane::LateralAxial, kSliceRangeDb,
                       tracker.track(dir + "/slice_lat_ax.pgm"));
    write_db_slice_pgm(db, SlicePlane::ElevationalAxial, kSliceRangeDb,
                       tracker.track(dir + "/slice_elev_ax.pgm"));
    write_db_slice_pgm(db, SlicePlane::LateralElevational, kSliceRangeDb,
                       tracker.track(dir + "/slice_lat_elev.pgm"));
    tracker.commit();
  }
}

RealVolume db_to_envelope(const RealVolume& db) {
  RealVolume env(db.grid);
  for (std::size_t i = 0; i < db.values.size(); ++i) {
    env.values[i] = std::pow(10.0, db.values[i] / 20.0);
  }
  return env;
}

void stage_metrics(const ExperimentConfig& cfg) {
  for (const auto& scheme : cfg.schemes) {
    ArtifactTracker tracker;
    auto dir = scheme_dir(cfg, scheme);
    auto vol = read_volume(dir + "/volume.vol");
    if (vol.complex_values) throw Error::validation("metrics: expected a dB intensity volume");
    auto env = db_to_envelope(vol.real);

    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("scheme", scheme_name(scheme.kind));
    std::string table;
    table += "metric                         value\n";
    table += "-----------------------------  ------------\n";
    auto add_row = [&table](const std::string& name, const std::string& value) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%-29s  %s\n", name.c_str(), value.c_str());
      table += buf;
    };
    add_row("scheme", scheme_name(scheme.kind));

    if (cfg.metrics.psf) {
      auto rep = measure_psf(env, cfg.geometry.wavelength());
      kv.emplace_back("lateral_fwhm_m", fmt("%.9e", rep.lateral_fwhm));
      kv.emplace_back("elevational_fwhm_m", fmt("%.9e", rep.elevational_fwhm));
      kv.emplace_back("axial_fwhm_m", fmt("%.9e", rep.axial_fwhm));
      kv.emplace_back("inner_energy_ratio", fmt("%.9f", rep.inner_energy_ratio));
      kv.emplace_back("inner_outer_quotient", fmt("%.9f", rep.inner_outer_quotient));
      kv.emplace_back("peak_voxel", std::to_string(rep.peak_voxel[0]) + " " +
                                        std::to_string(rep.peak_voxel[1]) + " " +
                                        std::to_string(rep.peak_voxel[2]));
      kv.emplace_back("peak_position_m", fmt("%.9e", rep.peak_position.x) + " " +
                                             fmt("%.9e", rep.peak_position.y) + " " +
                                             fmt("%.9e", rep.peak_position.z));
      add_row("lateral FWHM [um]", fmt("%.1f", rep.lateral_fwhm * 1e6));
      add_row("elevational FWHM [um]", fmt("%.1f", rep.elevational_fwhm * 1e6));
      add_row("axial FWHM [um]", fmt("%.1f", rep.axial_fwhm * 1e6));
      add_row("inner energy ratio", fmt("%.4f", rep.inner_energy_ratio));
    }
    if (cfg.metrics.cyst) {
      auto regions = cyst_regions(cfg.metrics);
      auto samples = extract_region_samples(env, regions);
      double g = gcnr(samples.inside, samples.outside, cfg.metrics.gcnr_bins);
      kv.emplace_back("gcnr", fmt("%.9f", g));
      kv.emplace_back("gcnr_inside_voxels", std::to_string(samples.inside.size()));
      kv.emplace_back("gcnr_outside_voxels", std::to_string(samples.outside.size()));
      add_row("gCNR", fmt("%.4f", g));
    }
    write_key_values(kv, tracker.track(dir + "/metrics.txt"));
    write_text_file(table, tracker.track(dir + "/metrics_table.txt"));
    tracker.commit();
  }
}

std::string manifest_text(const ExperimentConfig& cfg, double wall_seconds) {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("tool", "hercules 1.0.0");
  kv.emplace_back("config", cfg.config_path);
  kv.emplace_back("config_hash", hex64(cfg.config_hash));
  kv.emplace_back("scene", cfg.scene_path);
  kv.emplace_back("seed", std::to_string(cfg.seed));
  std::string names;
  for (const auto& s : cfg.schemes) {
    if (!names.empty()) names += ", ";
    names += scheme_name(s.kind);
  }
  kv.emplace_back("schemes", names);
  for (const auto& s : cfg.schemes) {
    auto dir = fs::path(scheme_dir(cfg, s));
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file()) files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      auto rel = fs::relative(f, cfg.output_dir).string();
      kv.emplace_back("artifact " + rel,
                      hex64(fnv1a64_file(f)) + " " + std::to_string(fs::file_size(f)));
    }
  }
  // wall clock is informational; it is the one nondeterministic manifest field
  kv.emplace_back("wall_clock_seconds", fmt("%.3f", wall_seconds));
  std::string text;
  for (const auto& [k, v] : kv) text += k + " = " + v + "\n";
  return text;
}

}  // namespace

Stage parse_stage(const std::string& name) {
  if (name == "simulate") return Stage::Simulate;
  if (name == "reconstruct") return Stage::Reconstruct;
  if (name == "metrics") return Stage::Metrics;
  if (name == "report") return Stage::Report;
  throw Error::validation("unknown stage '" + name +
                          "' (expected simulate, reconstruct, metrics or report)");
}

void run_stage(const ExperimentConfig& cfg, Stage stage) {
  ensure_dir(cfg.output_dir);
  switch (stage) {
    case Stage::Simulate: stage_simulate(cfg); break;
    case Stage::Reconstruct: stage_reconstruct(cfg); break;
    case Stage::Metrics: stage_metrics(cfg); break;
    case Stage::Report: write_report(cfg.output_dir); break;
  }
}

void run_experiment(const ExperimentConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  run_stage(cfg, Stage::Simulate);
  run_stage(cfg, Stage::Reconstruct);
  run_stage(cfg, Stage::Metrics);
  run_stage(cfg, Stage::Report);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_text_file(manifest_text(cfg, wall), (fs::path(cfg.output_dir) / "manifest.txt").string());
}

std::string write_report(const std::string& directory) {
  if (!fs::is_directory(directory)) throw Error::io("report: no such directory: " + directory);
  std::vector<std::pair<std::string, std::map<std::string, std::string>>> rows;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (!entry.is_directory()) continue;
    auto metrics = entry.path() / "metrics.txt";
    if (!fs::exists(metrics)) continue;
    auto kv = read_key_values(metrics.string());
    auto scheme = kv.count("scheme") ? kv["scheme"] : entry.path().filename().string();
    rows.emplace_back(scheme, std::move(kv));
  }
  if (rows.empty()) throw Error::validation("report: no metrics files under " + directory);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  auto um = [](const std::map<std::string, std::string>& kv, const char* key) {
    auto it = kv.find(key);
    if (it == kv.end()) return std::string("-");
    return fmt("%.1f", std::strtod(it->second.c_str(), nullptr) * 1e6);
  };
  auto plain = [](const std::map<std::string, std::string>& kv, const char* key) {
    auto it = kv.find(key);
    if (it == kv.end()) return std::string("-");
    return fmt("%.4f", std::strtod(it->second.c_str(), nullptr));
  };

  std::string text;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-20s %14s %14s %14s %12s %10s\n", "scheme", "lateral[um]",
                "elev[um]", "axial[um]", "inner-ratio", "gCNR");
  text += buf;
  text += std::string(88, '-') + "\n";
  for (const auto& [scheme, kv] : rows) {
    std::snprintf(buf, sizeof buf, "%-20s %14s %14s %14s %12s %10s\n", scheme.c_str(),
                  um(kv, "lateral_fwhm_m").c_str(), um(kv, "elevational_fwhm_m").c_str(),
                  um(kv, "axial_fwhm_m").c_str(), plain(kv, "inner_energy_ratio").c_str(),
                  plain(kv, "gcnr").c_str());
    text += buf;
  }
  write_text_file(text, (fs::path(directory) / "report.txt").string());
  return text;
}

}  // namespace herc
