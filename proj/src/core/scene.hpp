#pragma once

#include <string>
#include <vector>

#include "core/vec3.hpp"

namespace herc {

struct Scatterer {
  Vec3 position;              // [m]
  double reflectivity = 0.0;  // dimensionless amplitude
};

struct Scene {
  std::vector<Scatterer> scatterers;
  double speed_of_sound = 0.0;  // [m/s]
};

// One scatterer per line: "x y z reflectivity" in SI units, '#' comments.
Scene load_scene(const std::string& path, double speed_of_sound);
void save_scene(const Scene& scene, const std::string& path);

void validate_scene(const Scene& scene);

}  // namespace herc
