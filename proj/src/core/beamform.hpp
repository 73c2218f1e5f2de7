#pragma once

#include <array>
#include <vector>

#include "core/excitation.hpp"
#include "core/fft.hpp"
#include "core/geometry.hpp"
#include "core/tensor.hpp"
#include "core/vec3.hpp"
#include "core/wavesim.hpp"

namespace herc {

struct GridSpec {
  Vec3 origin;     // [m] center of the first voxel
  Vec3 spacing;    // [m] per axis
  std::array<int, 3> counts{0, 0, 0};  // voxels per axis (x, y, z)

  [[nodiscard]] std::size_t size() const {
    return static_cast<std::size_t>(counts[0]) * counts[1] * counts[2];
  }
  // x-fastest linear index
  [[nodiscard]] std::size_t index(int ix, int iy, int iz) const {
    return static_cast<std::size_t>(ix) +
           static_cast<std::size_t>(counts[0]) *
               (static_cast<std::size_t>(iy) + static_cast<std::size_t>(counts[1]) * iz);
  }
  [[nodiscard]] Vec3 position(int ix, int iy, int iz) const {
    return {origin.x + ix * spacing.x, origin.y + iy * spacing.y, origin.z + iz * spacing.z};
  }
  [[nodiscard]] bool same_as(const GridSpec& o) const;
};

// symmetric grid about a center point; counts are 2*round(half/spacing)+1
GridSpec make_centered_grid(const Vec3& center, const Vec3& half_extents, const Vec3& spacing);

struct VolumeGrid {
  GridSpec grid;
  std::vector<cplx> values;  // x-fastest

  VolumeGrid() = default;
  explicit VolumeGrid(const GridSpec& g) : grid(g), values(g.size(), cplx{}) {}
};

struct RealVolume {
  GridSpec grid;
  std::vector<double> values;  // x-fastest

  RealVolume() = default;
  explicit RealVolume(const GridSpec& g) : grid(g), values(g.size(), 0.0) {}
};

enum class WindowKind { None, Hann };

// Receive tapers, all off by default. A positive f-number gives an expanding
// voxel-centered aperture z/fnumber wide; fnumber 0 tapers the full aperture.
struct RxApodization {
  WindowKind lateral = WindowKind::None;      // decoded-aperture x axis
  double fnumber_lateral = 0.0;
  WindowKind elevational = WindowKind::None;  // decoded-aperture y axis
  double fnumber_elevational = 0.0;
  WindowKind line = WindowKind::None;         // line-channel receive axis
  double fnumber_line = 0.0;
};

// Cross-correlation of every trace with the unit-energy excitation kernel;
// a point echo's compressed envelope peaks at its round-trip delay.
Cube<double> matched_filter(const Cube<double>& traces, const std::vector<double>& kernel,
                            int threads);

// Analytic signal per trace: real part equals the input, spectrum one-sided.
Cube<cplx> analytic_signal(const Cube<double>& traces, int threads);

// Delay-and-sum of decoded element-domain data [biased ch][rx ch][t] onto the
// grid with spherical receive delays.
VolumeGrid das_elements(const Cube<cplx>& elements, Axis biased_axis, const ArrayGeometry& geom,
                        const TxWavefront& law, double fs, double t0, const GridSpec& grid,
                        const RxApodization& apod, int threads);

// Delay-and-sum of one event of encoded line-channel data onto the grid.
VolumeGrid das_line_event(const Cube<cplx>& data, int event, Axis rx_axis,
                          const ArrayGeometry& geom, const TxWavefront& law, double fs, double t0,
                          const GridSpec& grid, const RxApodization& apod, int threads);

// In-place coherent accumulation (complex sum), fixed input order.
void compound_into(VolumeGrid& acc, const VolumeGrid& v);
VolumeGrid compound(const std::vector<VolumeGrid>& volumes);

RealVolume envelope(const VolumeGrid& v);  // |value| per voxel

// 20*log10(|v|/max|v|) clamped at floor_db; all-zero volumes are an error.
RealVolume envelope_db(const VolumeGrid& v, double floor_db = -100.0);

// Full pipeline: matched filter -> analytic signal -> (decode for HERO) ->
// delay-and-sum per event -> coherent compounding. Returns the pre-envelope
// complex volume.
VolumeGrid reconstruct_complex(const TransmitScheme& scheme, const ChannelData& raw,
                               const Excitation& exc, const ArrayGeometry& geom,
                               const GridSpec& grid, const RxApodization& apod, int threads);

RealVolume reconstruct(const TransmitScheme& scheme, const ChannelData& raw,
                       const Excitation& exc, const ArrayGeometry& geom, const GridSpec& grid,
                       const RxApodization& apod, int threads, double floor_db = -100.0);

}  // namespace herc
