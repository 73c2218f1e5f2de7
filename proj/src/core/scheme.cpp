#include "core/scheme.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "core/error.hpp"

namespace herc {

namespace {

constexpr double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }

double vls_standoff_m(const TransmitScheme& s, const ArrayGeometry& g, Axis tx_axis) {
  return s.vls_standoff > 0.0 ? s.vls_standoff : g.aperture(tx_axis) / 2.0;
}

double vls_line_position(const TransmitScheme& s, const ArrayGeometry& g, int event) {
  double aperture = g.aperture(s.tx_axis);
  return -aperture / 2.0 + (event + 0.5) * aperture / s.n_events;
}

// For split TPW the first half of the events tilts about the primary axis and
// the second half about the orthogonal one.
struct TpwEvent {
  Axis tx_axis;
  double angle_rad;
};

TpwEvent tpw_event(const TransmitScheme& s, int event) {
  int per_axis = s.tpw_split_axes ? s.n_events / 2 : s.n_events;
  int local = event;
  Axis axis = s.tx_axis;
  if (s.tpw_split_axes && event >= per_axis) {
    local = event - per_axis;
    axis = orthogonal(s.tx_axis);
  }
  double max_a = deg2rad(s.tpw_max_angle_deg);
  double angle = per_axis > 1
                     ? -max_a + 2.0 * max_a * static_cast<double>(local) / (per_axis - 1)
                     : 0.0;
  return {axis, angle};
}

double tpw_offset(const ArrayGeometry& g, Axis tx_axis, double angle_rad, double c) {
  // most negative channel delay before shifting
  int nch = g.channel_count(tx_axis);
  double lo = g.channel_position(tx_axis, 0) * std::sin(angle_rad) / c;
  double hi = g.channel_position(tx_axis, nch - 1) * std::sin(angle_rad) / c;
  return lo < hi ? lo : hi;
}

}  // namespace

const char* scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::HerculesPlane: return "hercules_plane";
    case SchemeKind::HerculesDiverging: return "hercules_diverging";
    case SchemeKind::WalkingVls: return "vls";
    case SchemeKind::TiltedPlaneWave: return "tpw";
  }
  return "?";
}

bool is_hero(SchemeKind kind) {
  return kind == SchemeKind::HerculesPlane || kind == SchemeKind::HerculesDiverging;
}

double TxWavefront::tx_delay(const Vec3& v, double c) const {
  double u = tx_axis == Axis::Columns ? v.x : v.y;
  switch (shape) {
    case Shape::Plane:
      return v.z / c;
    case Shape::Cylindrical: {
      double du = u - line_u;
      return (std::sqrt(du * du + (v.z + standoff) * (v.z + standoff)) - standoff) / c;
    }
    case Shape::Tilted:
      return (u * sin_a + v.z * cos_a) / c - offset;
  }
  return 0.0;
}

void validate_scheme(const TransmitScheme& scheme, const ArrayGeometry& geom) {
  if (scheme.n_events < 1) throw Error::validation("scheme: n_events must be >= 1");
  if (is_hero(scheme.kind)) {
    int nch = geom.channel_count(scheme.tx_axis);
    if (scheme.n_events != nch) {
      throw Error::validation("scheme: HERO acquisitions need one event per biased channel (" +
                              std::to_string(nch) + "), got " + std::to_string(scheme.n_events));
    }
    if (!is_power_of_two(scheme.n_events)) {
      throw Error::validation("scheme: unsupported event count " + std::to_string(scheme.n_events) +
                              "; Hadamard matrices are only generated for powers of two");
    }
  }
  if (scheme.kind == SchemeKind::HerculesDiverging &&
      (scheme.diverging_angle_deg <= 0.0 || scheme.diverging_angle_deg >= 90.0)) {
    throw Error::validation("scheme: diverging angle must be in (0, 90) degrees");
  }
  if (scheme.kind == SchemeKind::WalkingVls &&
      (scheme.vls_subaperture <= 0.0 || scheme.vls_subaperture > 1.0)) {
    throw Error::validation("scheme: vls_subaperture must be in (0, 1]");
  }
  if (scheme.kind == SchemeKind::TiltedPlaneWave) {
    if (scheme.tpw_max_angle_deg < 0.0 || scheme.tpw_max_angle_deg >= 90.0) {
      throw Error::validation("scheme: tpw_max_angle must be in [0, 90) degrees");
    }
    if (scheme.tpw_split_axes && geom.n_rows != geom.n_cols) {
      throw Error::validation("scheme: split-axis TPW requires a square array");
    }
    if (scheme.tpw_split_axes && scheme.n_events % 2 != 0) {
      throw Error::validation("scheme: split-axis TPW requires an even event count");
    }
  }
}

TxChannelSetup tx_channel_setup(const TransmitScheme& scheme, const ArrayGeometry& geom,
                                const BiasSchedule* schedule, int event) {
  if (event < 0 || event >= scheme.n_events) {
    throw Error::validation("scheme: event " + std::to_string(event) + " out of range [0, " +
                            std::to_string(scheme.n_events) + ")");
  }
  TxChannelSetup out;
  out.tx_axis = scheme.tx_axis;
  if (scheme.kind == SchemeKind::TiltedPlaneWave) out.tx_axis = tpw_event(scheme, event).tx_axis;
  out.rx_axis = orthogonal(out.tx_axis);

  int nch = geom.channel_count(out.tx_axis);
  out.delays.assign(static_cast<std::size_t>(nch), 0.0);
  out.drive.assign(static_cast<std::size_t>(nch), 1);
  out.bias.assign(static_cast<std::size_t>(nch), 1);
  out.active.assign(static_cast<std::size_t>(nch), 1);
  double c = geom.speed_of_sound;

  switch (scheme.kind) {
    case SchemeKind::HerculesPlane:
    case SchemeKind::HerculesDiverging: {
      // a null schedule yields the uniform-bias transmit geometry (delay queries)
      if (schedule != nullptr) {
        auto drives = transmit_polarity(*schedule, event);
        for (int ch = 0; ch < nch; ++ch) {
          out.drive[static_cast<std::size_t>(ch)] = drives[static_cast<std::size_t>(ch)];
          out.bias[static_cast<std::size_t>(ch)] =
              static_cast<std::int8_t>(schedule->sign(event, ch));
        }
      }
      if (scheme.kind == SchemeKind::HerculesDiverging) {
        double d = (geom.aperture(out.tx_axis) / 2.0) / std::tan(deg2rad(scheme.diverging_angle_deg));
        for (int ch = 0; ch < nch; ++ch) {
          double u = geom.channel_position(out.tx_axis, ch);
          out.delays[static_cast<std::size_t>(ch)] = (std::sqrt(u * u + d * d) - d) / c;
        }
      }
      break;
    }
    case SchemeKind::WalkingVls: {
      double d = vls_standoff_m(scheme, geom, out.tx_axis);
      double ue = vls_line_position(scheme, geom, event);
      double half_sub = scheme.vls_subaperture * geom.aperture(out.tx_axis) / 2.0;
      for (int ch = 0; ch < nch; ++ch) {
        double u = geom.channel_position(out.tx_axis, ch);
        double du = u - ue;
        out.delays[static_cast<std::size_t>(ch)] = (std::sqrt(du * du + d * d) - d) / c;
        out.active[static_cast<std::size_t>(ch)] = std::abs(du) <= half_sub ? 1 : 0;
      }
      break;
    }
    case SchemeKind::TiltedPlaneWave: {
      auto ev = tpw_event(scheme, event);
      double off = tpw_offset(geom, out.tx_axis, ev.angle_rad, c);
      for (int ch = 0; ch < nch; ++ch) {
        double u = geom.channel_position(out.tx_axis, ch);
        out.delays[static_cast<std::size_t>(ch)] = u * std::sin(ev.angle_rad) / c - off;
      }
      break;
    }
  }
  return out;
}

TxWavefront tx_wavefront(const TransmitScheme& scheme, const ArrayGeometry& geom, int event) {
  TxWavefront w;
  w.tx_axis = scheme.tx_axis;
  switch (scheme.kind) {
    case SchemeKind::HerculesPlane:
      w.shape = TxWavefront::Shape::Plane;
      break;
    case SchemeKind::HerculesDiverging:
      w.shape = TxWavefront::Shape::Cylindrical;
      w.standoff =
          (geom.aperture(w.tx_axis) / 2.0) / std::tan(deg2rad(scheme.diverging_angle_deg));
      w.line_u = 0.0;
      break;
    case SchemeKind::WalkingVls:
      w.shape = TxWavefront::Shape::Cylindrical;
      w.standoff = vls_standoff_m(scheme, geom, w.tx_axis);
      w.line_u = vls_line_position(scheme, geom, event);
      break;
    case SchemeKind::TiltedPlaneWave: {
      auto ev = tpw_event(scheme, event);
      w.tx_axis = ev.tx_axis;
      w.shape = TxWavefront::Shape::Tilted;
      w.sin_a = std::sin(ev.angle_rad);
      w.cos_a = std::cos(ev.angle_rad);
      w.offset = tpw_offset(geom, w.tx_axis, ev.angle_rad, geom.speed_of_sound);
      break;
    }
  }
  return w;
}

}  // namespace herc
