#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <string>

#include "core/beamform.hpp"
#include "core/geometry.hpp"
#include "core/scene.hpp"
#include "core/tensor.hpp"

namespace tst {

inline herc::ArrayGeometry desk_geom(int n) {
  return herc::build_array(n, n, 250e-6, 30e-6, 6.3e6, 50e6, 1540.0);
}

inline herc::Scene point_scene(double x, double y, double z, double refl = 1.0,
                               double c = 1540.0) {
  herc::Scene s;
  s.speed_of_sound = c;
  s.scatterers.push_back({{x, y, z}, refl});
  return s;
}

template <typename T>
double max_abs(const herc::Cube<T>& c) {
  double peak = 0.0;
  for (const auto& v : c.data) peak = std::max(peak, std::abs(v));
  return peak;
}

template <typename T>
double max_rel_err(const herc::Cube<T>& a, const herc::Cube<T>& b) {
  double scale = std::max(max_abs(a), max_abs(b));
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    worst = std::max(worst, std::abs(a.data[i] - b.data[i]) / scale);
  }
  return worst;
}

inline double max_rel_err(const herc::VolumeGrid& a, const herc::VolumeGrid& b) {
  double scale = 0.0;
  for (const auto& v : a.values) scale = std::max(scale, std::abs(v));
  for (const auto& v : b.values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]) / scale);
  }
  return worst;
}

// unique scratch directory under the build tree
inline std::string scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("herc_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace tst
