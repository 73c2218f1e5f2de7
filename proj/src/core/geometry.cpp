#include "core/geometry.hpp"

#include <string>

#include "core/error.hpp"

namespace herc {

const char* axis_name(Axis axis) { return axis == Axis::Rows ? "rows" : "columns"; }

Axis orthogonal(Axis axis) { return axis == Axis::Rows ? Axis::Columns : Axis::Rows; }

Vec3 ArrayGeometry::element_center(int r, int c) const {
  return {(c - (n_cols - 1) / 2.0) * pitch, (r - (n_rows - 1) / 2.0) * pitch, 0.0};
}

double ArrayGeometry::channel_position(Axis axis, int index) const {
  if (axis == Axis::Rows) return (index - (n_rows - 1) / 2.0) * pitch;
  return (index - (n_cols - 1) / 2.0) * pitch;
}

std::vector<Vec3> ArrayGeometry::elements_of_channel(Axis axis, int index) const {
  if (index < 0 || index >= channel_count(axis)) {
    throw Error::validation("elements_of_channel: " + std::string(axis_name(axis)) +
                            " index " + std::to_string(index) + " out of range [0, " +
                            std::to_string(channel_count(axis)) + ")");
  }
  std::vector<Vec3> out;
  if (axis == Axis::Rows) {
    out.reserve(static_cast<std::size_t>(n_cols));
    for (int c = 0; c < n_cols; ++c) out.push_back(element_center(index, c));
  } else {
    out.reserve(static_cast<std::size_t>(n_rows));
    for (int r = 0; r < n_rows; ++r) out.push_back(element_center(r, index));
  }
  return out;
}

ArrayGeometry build_array(int n_rows, int n_cols, double pitch, double kerf,
                          double center_frequency, double sampling_frequency,
                          double speed_of_sound) {
  if (n_rows < 2) throw Error::validation("geometry: n_rows must be >= 2, got " + std::to_string(n_rows));
  if (n_cols < 2) throw Error::validation("geometry: n_cols must be >= 2, got " + std::to_string(n_cols));
  if (pitch <= 0.0) throw Error::validation("geometry: pitch must be positive");
  if (kerf < 0.0) throw Error::validation("geometry: kerf must be non-negative");
  if (kerf >= pitch) throw Error::validation("geometry: kerf must be smaller than pitch");
  if (center_frequency <= 0.0) throw Error::validation("geometry: center_frequency must be positive");
  if (sampling_frequency <= 0.0) throw Error::validation("geometry: sampling_frequency must be positive");
  if (speed_of_sound <= 0.0) throw Error::validation("geometry: speed_of_sound must be positive");
  return ArrayGeometry{n_rows, n_cols, pitch, kerf, center_frequency, sampling_frequency, speed_of_sound};
}

}  // namespace herc
