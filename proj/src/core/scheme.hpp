#pragma once

#include <cstdint>
#include <vector>

#include "core/geometry.hpp"
#include "core/hadamard.hpp"
#include "core/vec3.hpp"

namespace herc {

enum class SchemeKind { HerculesPlane, HerculesDiverging, WalkingVls, TiltedPlaneWave };

const char* scheme_name(SchemeKind kind);
bool is_hero(SchemeKind kind);

struct TransmitScheme {
  SchemeKind kind = SchemeKind::HerculesPlane;
  Axis tx_axis = Axis::Columns;  // biased axis for HERO schemes
  int n_events = 0;
  double diverging_angle_deg = 45.0;  // HerculesDiverging sector half-angle
  double vls_standoff = 0.0;          // [m] virtual line depth behind array; 0 -> aperture/2
  double vls_subaperture = 0.25;      // active fraction of the aperture per emission
  double tpw_max_angle_deg = 16.0;    // tilt span is [-max, +max]
  bool tpw_split_axes = true;         // half the events tilted per axis
};

// Per-event transmit description at channel granularity; every element of a
// transmit channel fires with its channel's delay and drive polarity.
struct TxChannelSetup {
  Axis tx_axis = Axis::Columns;
  Axis rx_axis = Axis::Rows;
  std::vector<double> delays;        // [s] per transmit channel, all >= 0
  std::vector<std::int8_t> drive;    // waveform polarity per transmit channel
  std::vector<std::int8_t> bias;     // bias state per transmit channel (+1 when unbiased operation)
  std::vector<std::uint8_t> active;  // 1 if the channel fires in this event
};

// Arrival-time law of the transmitted wavefront at a field point, matching the
// channel delays above (same time origin).
struct TxWavefront {
  enum class Shape { Plane, Cylindrical, Tilted };
  Shape shape = Shape::Plane;
  Axis tx_axis = Axis::Columns;
  double standoff = 0.0;  // [m] cylindrical: virtual line at z = -standoff
  double line_u = 0.0;    // [m] cylindrical: line position along the varying coordinate
  double sin_a = 0.0;     // tilted
  double cos_a = 1.0;
  double offset = 0.0;    // [s] tilted: shift that keeps channel delays non-negative

  [[nodiscard]] double tx_delay(const Vec3& v, double c) const;
};

void validate_scheme(const TransmitScheme& scheme, const ArrayGeometry& geom);

// schedule is required for HERO schemes and ignored otherwise
TxChannelSetup tx_channel_setup(const TransmitScheme& scheme, const ArrayGeometry& geom,
                                const BiasSchedule* schedule, int event);

TxWavefront tx_wavefront(const TransmitScheme& scheme, const ArrayGeometry& geom, int event);

}  // namespace herc
