#pragma once

#include <string>
#include <vector>

#include "core/vec3.hpp"

namespace herc {

// Rows span the x-axis and stack along y; columns span y and stack along x.
// x is the lateral direction, y elevational, z depth. Array normal is +z.
enum class Axis { Rows, Columns };

const char* axis_name(Axis axis);
Axis orthogonal(Axis axis);

struct ArrayGeometry {
  int n_rows = 0;
  int n_cols = 0;
  double pitch = 0.0;               // [m] element center spacing
  double kerf = 0.0;                // [m] gap between elements
  double center_frequency = 0.0;    // [Hz]
  double sampling_frequency = 0.0;  // [Hz]
  double speed_of_sound = 0.0;      // [m/s]

  [[nodiscard]] double wavelength() const { return speed_of_sound / center_frequency; }
  [[nodiscard]] double element_width() const { return pitch - kerf; }
  [[nodiscard]] double aperture_x() const { return n_cols * pitch; }
  [[nodiscard]] double aperture_y() const { return n_rows * pitch; }
  [[nodiscard]] double aperture(Axis tx_axis) const {
    // extent along the coordinate that the axis' channels vary over
    return tx_axis == Axis::Columns ? aperture_x() : aperture_y();
  }

  [[nodiscard]] int channel_count(Axis axis) const {
    return axis == Axis::Rows ? n_rows : n_cols;
  }

  // center of element at (row r, column c); array centered on the origin
  [[nodiscard]] Vec3 element_center(int r, int c) const;

  // coordinate along which the axis' channels vary (y for rows, x for columns)
  [[nodiscard]] double channel_position(Axis axis, int index) const;

  [[nodiscard]] std::vector<Vec3> elements_of_channel(Axis axis, int index) const;
};

ArrayGeometry build_array(int n_rows, int n_cols, double pitch, double kerf,
                          double center_frequency, double sampling_frequency,
                          double speed_of_sound);

}  // namespace herc
