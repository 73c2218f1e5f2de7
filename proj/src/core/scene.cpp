#include "core/scene.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace herc {

Scene load_scene(const std::string& path, double speed_of_sound) {
  std::ifstream in(path);
  if (!in) throw Error::io("scene: cannot open " + path);
  Scene scene;
  scene.speed_of_sound = speed_of_sound;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    Scatterer s;
    if (!(ss >> s.position.x)) continue;  // blank or comment-only line
    if (!(ss >> s.position.y >> s.position.z >> s.reflectivity)) {
      throw Error::io("scene: " + path + ":" + std::to_string(lineno) +
                      ": expected 'x y z reflectivity'");
    }
    scene.scatterers.push_back(s);
  }
  validate_scene(scene);
  return scene;
}

void save_scene(const Scene& scene, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error::io("scene: cannot write " + path);
  out << "# x y z reflectivity (SI units)\n";
  char buf[128];
  for (const auto& s : scene.scatterers) {
    std::snprintf(buf, sizeof buf, "%.9e %.9e %.9e %.9e\n", s.position.x, s.position.y,
                  s.position.z, s.reflectivity);
    out << buf;
  }
  if (!out) throw Error::io("scene: write failed for " + path);
}

void validate_scene(const Scene& scene) {
  for (std::size_t i = 0; i < scene.scatterers.size(); ++i) {
    const auto& s = scene.scatterers[i];
    if (!(s.position.z > 0.0)) {
      throw Error::validation("scene: scatterer " + std::to_string(i) +
                              " is behind the array (z must be > 0)");
    }
    if (!std::isfinite(s.reflectivity) || !std::isfinite(s.position.x) ||
        !std::isfinite(s.position.y) || !std::isfinite(s.position.z)) {
      throw Error::validation("scene: scatterer " + std::to_string(i) + " has non-finite values");
    }
  }
}

}  // namespace herc
