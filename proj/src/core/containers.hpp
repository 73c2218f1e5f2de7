#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/beamform.hpp"
#include "core/wavesim.hpp"

namespace herc {

// Channel-data container, magic "HERCRF01". 64-byte little-endian header:
//   char[8]  magic
//   u16      domain      0 = encoded channels, 1 = decoded elements
//   u16      value_kind  0 = f64 real, 1 = c128 complex interleaved
//   u16      scheme      0 plane HERO, 1 diverging HERO, 2 vls, 3 tpw
//   u16      tx_axis     0 = rows, 1 = columns
//   u32      dim0, dim1, dim2   (event|biased channel, rx channel, time)
//   u32      n_events
//   f64      fs, t0
//   u8[16]   reserved (zero)
// followed by dim0*dim1*dim2 values, last axis fastest.
void write_channel_data(const ChannelData& data, const std::string& path);
ChannelData read_channel_data(const std::string& path);

// Volume container, magic "HERCVOL1". 64-byte little-endian header:
//   char[8]  magic
//   u16      dims[3]     (x, y, z voxel counts)
//   u16      value_kind  0 = f64 real, 1 = c128 complex interleaved
//   f64      spacing[3], origin[3]
// followed by voxel values in x-fastest order.
void write_volume(const RealVolume& volume, const std::string& path);
void write_volume(const VolumeGrid& volume, const std::string& path);

struct AnyVolume {
  bool complex_values = false;
  RealVolume real;
  VolumeGrid cplx;
};
AnyVolume read_volume(const std::string& path);

// 8-bit binary PGM of one mid-plane slice of a dB volume; display range
// [-range_db, 0] mapped linearly onto [0, 255].
enum class SlicePlane { LateralAxial, ElevationalAxial, LateralElevational };
void write_db_slice_pgm(const RealVolume& db_volume, SlicePlane plane, double range_db,
                        const std::string& path);

// key = value text files (machine-readable metrics / manifests)
void write_key_values(const std::vector<std::pair<std::string, std::string>>& kv,
                      const std::string& path);
std::map<std::string, std::string> read_key_values(const std::string& path);

void write_text_file(const std::string& text, const std::string& path);

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64_file(const std::string& path);
std::string hex64(std::uint64_t v);

}  // namespace herc
