#include "core/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "core/containers.hpp"
#include "core/error.hpp"

namespace herc {

namespace {

namespace fs = std::filesystem;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

enum class Dim { Length, Time, Frequency, Speed, Angle, Decibel, Plain };

// unit suffix -> factor into SI; "wl" lengths scale by the wavelength
double unit_factor(Dim dim, const std::string& unit, double wavelength, const std::string& where) {
  switch (dim) {
    case Dim::Length:
      if (unit == "m") return 1.0;
      if (unit == "mm") return 1e-3;
      if (unit == "um") return 1e-6;
      if (unit == "nm") return 1e-9;
      if (unit == "wl") {
        if (wavelength <= 0.0) throw Error::validation(where + ": 'wl' unit needs a geometry");
        return wavelength;
      }
      break;
    case Dim::Time:
      if (unit == "s") return 1.0;
      if (unit == "ms") return 1e-3;
      if (unit == "us") return 1e-6;
      if (unit == "ns") return 1e-9;
      break;
    case Dim::Frequency:
      if (unit == "hz") return 1.0;
      if (unit == "khz") return 1e3;
      if (unit == "mhz") return 1e6;
      if (unit == "ghz") return 1e9;
      break;
    case Dim::Speed:
      if (unit == "m/s") return 1.0;
      break;
    case Dim::Angle:
      if (unit == "deg") return 1.0;  // angles are carried in degrees
      if (unit == "rad") return 180.0 / 3.14159265358979323846;
      break;
    case Dim::Decibel:
      if (unit == "db") return 1.0;
      break;
    case Dim::Plain:
      break;
  }
  throw Error::validation(where + ": unknown or missing unit '" + unit + "'");
}

struct Section {
  std::string name;
  std::map<std::string, std::string> entries;
  std::set<std::string> used;
};

class ConfigFile {
 public:
  ConfigFile(const std::string& path) : path_(path) {
    std::ifstream in(path);
    if (!in) throw Error::io("config: cannot open " + path);
    std::string line;
    Section* cur = nullptr;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') {
          throw Error::validation("config: " + path + ":" + std::to_string(lineno) +
                                  ": malformed section header");
        }
        sections_.push_back({lower(trim(line.substr(1, line.size() - 2))), {}, {}});
        cur = &sections_.back();
        continue;
      }
      auto eq = line.find('=');
      if (eq == std::string::npos || cur == nullptr) {
        throw Error::validation("config: " + path + ":" + std::to_string(lineno) +
                                ": expected 'key = value' inside a section");
      }
      cur->entries[lower(trim(line.substr(0, eq)))] = trim(line.substr(eq + 1));
    }
  }

  Section* find(const std::string& name) {
    for (auto& s : sections_) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }

  Section& require(const std::string& name) {
    auto* s = find(name);
    if (s == nullptr) throw Error::validation("config: missing [" + name + "] section");
    return *s;
  }

  void check_consumed() const {
    static const std::set<std::string> known = {"geometry", "scheme", "excitation", "scene",
                                                "grid",     "beamform", "metrics",  "output",
                                                "run"};
    for (const auto& s : sections_) {
      if (!known.count(s.name)) {
        throw Error::validation("config: unknown section [" + s.name + "]");
      }
      for (const auto& [k, v] : s.entries) {
        if (!s.used.count(k)) {
          throw Error::validation("config: unknown key '" + k + "' in [" + s.name + "]");
        }
      }
    }
  }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::vector<Section> sections_;
};

class Fields {
 public:
  Fields(Section& s, double wavelength = 0.0) : s_(s), wavelength_(wavelength) {}

  bool has(const std::string& key) const { return s_.entries.count(key) > 0; }

  std::string raw(const std::string& key) {
    auto it = s_.entries.find(key);
    if (it == s_.entries.end()) {
      throw Error::validation("config: [" + s_.name + "] is missing '" + key + "'");
    }
    s_.used.insert(key);
    return it->second;
  }

  std::string raw_or(const std::string& key, const std::string& dflt) {
    if (!has(key)) return dflt;
    return raw(key);
  }

  double quantity(const std::string& key, Dim dim) { return parse_quantity(key, raw(key), dim); }

  double quantity_or(const std::string& key, Dim dim, double dflt) {
    if (!has(key)) return dflt;
    return parse_quantity(key, raw(key), dim);
  }

  long integer(const std::string& key) {
    auto text = raw(key);
    try {
      std::size_t used = 0;
      long v = std::stol(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw Error::validation("config: [" + s_.name + "] " + key + ": not an integer: '" + text +
                              "'");
    }
  }

  long integer_or(const std::string& key, long dflt) { return has(key) ? integer(key) : dflt; }

  bool boolean_or(const std::string& key, bool dflt) {
    if (!has(key)) return dflt;
    auto v = lower(raw(key));
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    throw Error::validation("config: [" + s_.name + "] " + key + ": expected a boolean");
  }

 private:
  double parse_quantity(const std::string& key, const std::string& text, Dim dim) {
    const std::string where = "config: [" + s_.name + "] " + key;
    std::istringstream ss(text);
    double value = 0.0;
    if (lower(text) == "inf" || lower(text) == "+inf") {
      return std::numeric_limits<double>::infinity();
    }
    if (!(ss >> value)) throw Error::validation(where + ": not a number: '" + text + "'");
    std::string unit;
    ss >> unit;
    std::string rest;
    if (ss >> rest) throw Error::validation(where + ": trailing text in '" + text + "'");
    if (unit.empty()) {
      if (dim == Dim::Plain) return value;
      throw Error::validation(where + ": a unit suffix is required (got bare '" + text + "')");
    }
    return value * unit_factor(dim, lower(unit), wavelength_, where);
  }

  Section& s_;
  double wavelength_;
};

SchemeKind parse_scheme_kind(const std::string& name) {
  auto n = lower(trim(name));
  if (n == "hercules_plane") return SchemeKind::HerculesPlane;
  if (n == "hercules_diverging") return SchemeKind::HerculesDiverging;
  if (n == "vls") return SchemeKind::WalkingVls;
  if (n == "tpw") return SchemeKind::TiltedPlaneWave;
  throw Error::validation("config: unknown scheme kind '" + trim(name) +
                          "' (expected hercules_plane, hercules_diverging, vls or tpw)");
}

Axis parse_axis(const std::string& name, const std::string& where) {
  auto n = lower(trim(name));
  if (n == "rows") return Axis::Rows;
  if (n == "columns") return Axis::Columns;
  throw Error::validation(where + ": expected 'rows' or 'columns', got '" + name + "'");
}

WindowKind parse_window(const std::string& name, const std::string& where) {
  auto n = lower(trim(name));
  if (n == "none") return WindowKind::None;
  if (n == "hann") return WindowKind::Hann;
  throw Error::validation(where + ": expected 'none' or 'hann', got '" + name + "'");
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  ConfigFile file(path);
  ExperimentConfig cfg;
  cfg.config_path = fs::absolute(path).string();
  cfg.config_hash = fnv1a64_file(path);

  {
    Fields f(file.require("geometry"));
    cfg.geometry = build_array(
        static_cast<int>(f.integer("rows")), static_cast<int>(f.integer("cols")),
        f.quantity("pitch", Dim::Length), f.quantity("kerf", Dim::Length),
        f.quantity("center_frequency", Dim::Frequency),
        f.quantity("sampling_frequency", Dim::Frequency), f.quantity("speed_of_sound", Dim::Speed));
  }
  const double wl = cfg.geometry.wavelength();

  {
    Fields f(file.require("scheme"));
    TransmitScheme base;
    base.tx_axis = parse_axis(f.raw_or("transmit_axis", "columns"), "config: [scheme] transmit_axis");
    base.n_events = static_cast<int>(f.integer("n_events"));
    base.diverging_angle_deg = f.quantity_or("diverging_angle", Dim::Angle, 45.0);
    if (f.has("vls_standoff") && lower(f.raw_or("vls_standoff", "auto")) != "auto") {
      base.vls_standoff = f.quantity("vls_standoff", Dim::Length);
    } else {
      f.raw_or("vls_standoff", "auto");  // mark consumed when present
      base.vls_standoff = 0.0;
    }
    base.vls_subaperture = f.quantity_or("vls_subaperture", Dim::Plain, 0.25);
    base.tpw_max_angle_deg = f.quantity_or("tpw_max_angle", Dim::Angle, 16.0);
    auto tpw_axes = lower(f.raw_or("tpw_axes", "both"));
    if (tpw_axes == "both") {
      base.tpw_split_axes = true;
    } else {
      base.tpw_split_axes = false;
      // single-axis TPW transmits on the named axis; other schemes keep the primary one
      base.tx_axis = parse_axis(tpw_axes, "config: [scheme] tpw_axes");
    }
    std::string kinds = f.has("kinds") ? f.raw("kinds") : f.raw("kind");
    std::stringstream ss(kinds);
    std::string item;
    Axis primary = parse_axis(f.raw_or("transmit_axis", "columns"), "config: [scheme]");
    while (std::getline(ss, item, ',')) {
      TransmitScheme s = base;
      s.kind = parse_scheme_kind(item);
      if (s.kind != SchemeKind::TiltedPlaneWave || base.tpw_split_axes) s.tx_axis = primary;
      for (const auto& prev : cfg.schemes) {
        if (prev.kind == s.kind) {
          throw Error::validation("config: [scheme] lists '" + std::string(scheme_name(s.kind)) +
                                  "' twice");
        }
      }
      validate_scheme(s, cfg.geometry);
      cfg.schemes.push_back(s);
    }
    if (cfg.schemes.empty()) throw Error::validation("config: [scheme] kinds is empty");
  }

  {
    Fields f(file.require("excitation"));
    auto kind = lower(f.raw_or("kind", "gated_sine"));
    if (kind == "gated_sine") {
      cfg.excitation.kind = ExcitationKind::GatedSine;
      cfg.excitation.cycles = f.quantity_or("cycles", Dim::Plain, 1.0);
    } else if (kind == "linear_chirp") {
      cfg.excitation.kind = ExcitationKind::LinearChirp;
      cfg.excitation.f0 = f.quantity("f0", Dim::Frequency);
      cfg.excitation.f1 = f.quantity("f1", Dim::Frequency);
      cfg.excitation.duration = f.quantity("duration", Dim::Time);
      cfg.excitation.taper = f.quantity_or("taper", Dim::Plain, 0.2);
    } else {
      throw Error::validation("config: [excitation] kind must be gated_sine or linear_chirp");
    }
    build_excitation(cfg);  // validate now
  }

  {
    Fields f(file.require("scene"));
    auto rel = f.raw("file");
    auto resolved = fs::path(rel);
    if (resolved.is_relative()) resolved = fs::path(cfg.config_path).parent_path() / resolved;
    cfg.scene_path = resolved.lexically_normal().string();
    if (!fs::exists(cfg.scene_path)) {
      throw Error::validation("config: [scene] file does not exist: " + cfg.scene_path);
    }
    cfg.snr_db = f.quantity_or("snr", Dim::Decibel, std::numeric_limits<double>::infinity());
  }

  {
    Fields f(file.require("grid"), wl);
    Vec3 center{f.quantity("center_x", Dim::Length), f.quantity("center_y", Dim::Length),
                f.quantity("center_z", Dim::Length)};
    Vec3 half{f.quantity_or("half_span_lateral", Dim::Length, 10.0 * wl),
              f.quantity_or("half_span_elevational", Dim::Length, 10.0 * wl),
              f.quantity_or("half_span_axial", Dim::Length, 5.0 * wl)};
    Vec3 voxel{f.quantity_or("voxel_lateral", Dim::Length, 0.25 * wl),
               f.quantity_or("voxel_elevational", Dim::Length, 0.25 * wl),
               f.quantity_or("voxel_axial", Dim::Length, 0.125 * wl)};
    cfg.grid = make_centered_grid(center, half, voxel);
  }

  if (auto* s = file.find("beamform")) {
    Fields f(*s);
    cfg.apod.lateral = parse_window(f.raw_or("rx_window_lateral", "none"), "config: [beamform]");
    cfg.apod.fnumber_lateral = f.quantity_or("rx_fnumber_lateral", Dim::Plain, 0.0);
    cfg.apod.elevational =
        parse_window(f.raw_or("rx_window_elevational", "none"), "config: [beamform]");
    cfg.apod.fnumber_elevational = f.quantity_or("rx_fnumber_elevational", Dim::Plain, 0.0);
    cfg.apod.line = parse_window(f.raw_or("rx_window_line", "none"), "config: [beamform]");
    cfg.apod.fnumber_line = f.quantity_or("rx_fnumber_line", Dim::Plain, 0.0);
    cfg.db_floor = f.quantity_or("db_floor", Dim::Decibel, -100.0);
  }

  if (auto* s = file.find("metrics")) {
    Fields f(*s, wl);
    cfg.metrics.psf = f.boolean_or("psf", true);
    cfg.metrics.cyst = f.boolean_or("cyst_gcnr", false);
    if (cfg.metrics.cyst) {
      cfg.metrics.cyst_center = {f.quantity("cyst_center_x", Dim::Length),
                                 f.quantity("cyst_center_y", Dim::Length),
                                 f.quantity("cyst_center_z", Dim::Length)};
      cfg.metrics.cyst_radius = f.quantity("cyst_radius", Dim::Length);
      cfg.metrics.inner_scale = f.quantity_or("cyst_inner_scale", Dim::Plain, 0.7);
      cfg.metrics.guard_scale = f.quantity_or("cyst_guard_scale", Dim::Plain, 1.3);
      cfg.metrics.outer_scale = f.quantity_or("cyst_outer_scale", Dim::Plain, 2.0);
      cfg.metrics.cyst_length = f.quantity("cyst_length", Dim::Length);
      cfg.metrics.gcnr_bins = static_cast<int>(f.integer_or("gcnr_bins", 100));
    }
  }

  {
    Fields f(file.require("output"));
    auto rel = f.raw("directory");
    auto resolved = fs::path(rel);
    if (resolved.is_relative()) resolved = fs::path(cfg.config_path).parent_path() / resolved;
    cfg.output_dir = resolved.lexically_normal().string();
  }

  if (auto* s = file.find("run")) {
    Fields f(*s);
    cfg.seed = static_cast<std::uint64_t>(f.integer_or("seed", 1));
    cfg.threads = static_cast<int>(f.integer_or("threads", 1));
  }

  file.check_consumed();
  return cfg;
}

Excitation build_excitation(const ExperimentConfig& cfg) {
  const auto& e = cfg.excitation;
  if (e.kind == ExcitationKind::GatedSine) {
    return gated_sine(cfg.geometry.center_frequency, e.cycles, cfg.geometry.sampling_frequency);
  }
  return linear_chirp(e.f0, e.f1, e.duration, cfg.geometry.sampling_frequency, e.taper);
}

CylinderRegionPair cyst_regions(const MetricsSettings& m) {
  CylinderRegionPair r;
  r.center = m.cyst_center;
  r.axis = {0.0, 1.0, 0.0};
  r.inner_radius = m.inner_scale * m.cyst_radius;
  r.guard_radius = m.guard_scale * m.cyst_radius;
  r.outer_radius = m.outer_scale * m.cyst_radius;
  r.length = m.cyst_length;
  return r;
}

}  // namespace herc
