#include "core/containers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "core/error.hpp"

static_assert(std::endian::native == std::endian::little,
              "containers are specified little-endian; big-endian hosts are unsupported");

namespace herc {

namespace {

constexpr char kRfMagic[8] = {'H', 'E', 'R', 'C', 'R', 'F', '0', '1'};
constexpr char kVolMagic[8] = {'H', 'E', 'R', 'C', 'V', 'O', 'L', '1'};

struct Writer {
  std::ofstream out;
  std::string path;

  explicit Writer(const std::string& p) : out(p, std::ios::binary), path(p) {
    if (!out) throw Error::io("cannot open " + p + " for writing");
  }
  void bytes(const void* data, std::size_t n) {
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
  }
  template <typename T>
  void pod(const T& v) {
    bytes(&v, sizeof v);
  }
  void finish() {
    out.flush();
    if (!out) throw Error::io("write failed for " + path);
  }
};

struct Reader {
  std::ifstream in;
  std::string path;

  explicit Reader(const std::string& p) : in(p, std::ios::binary), path(p) {
    if (!in) throw Error::io("cannot open " + p);
  }
  void bytes(void* data, std::size_t n) {
    in.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
    if (in.gcount() != static_cast<std::streamsize>(n)) {
      throw Error::io("truncated container: " + path);
    }
  }
  template <typename T>
  void pod(T& v) {
    bytes(&v, sizeof v);
  }
};

void write_cube_f64(Writer& w, const std::vector<double>& v) {
  w.bytes(v.data(), v.size() * sizeof(double));
}

void write_cube_c128(Writer& w, const std::vector<cplx>& v) {
  w.bytes(v.data(), v.size() * sizeof(cplx));
}

}  // namespace

void write_channel_data(const ChannelData& data, const std::string& path) {
  Writer w(path);
  w.bytes(kRfMagic, 8);
  w.pod(static_cast<std::uint16_t>(data.domain == ChannelData::Domain::EncodedChannels ? 0 : 1));
  w.pod(static_cast<std::uint16_t>(data.complex_samples ? 1 : 0));
  w.pod(static_cast<std::uint16_t>(data.scheme));
  w.pod(static_cast<std::uint16_t>(data.tx_axis == Axis::Rows ? 0 : 1));
  const auto& dims = data.complex_samples ? data.cplx_samples.dims : data.real_samples.dims;
  for (auto d : dims) w.pod(static_cast<std::uint32_t>(d));
  w.pod(static_cast<std::uint32_t>(data.n_events));
  w.pod(data.fs);
  w.pod(data.t0);
  const char reserved[16] = {};
  w.bytes(reserved, sizeof reserved);
  if (data.complex_samples) {
    write_cube_c128(w, data.cplx_samples.data);
  } else {
    write_cube_f64(w, data.real_samples.data);
  }
  w.finish();
}

ChannelData read_channel_data(const std::string& path) {
  Reader r(path);
  char magic[8];
  r.bytes(magic, 8);
  if (std::memcmp(magic, kRfMagic, 8) != 0) {
    throw Error::io("container magic mismatch: " + path + " is not channel data (HERCRF01)");
  }
  std::uint16_t domain = 0, kind = 0, scheme = 0, axis = 0;
  r.pod(domain);
  r.pod(kind);
  r.pod(scheme);
  r.pod(axis);
  std::uint32_t d0 = 0, d1 = 0, d2 = 0, n_events = 0;
  r.pod(d0);
  r.pod(d1);
  r.pod(d2);
  r.pod(n_events);
  ChannelData out;
  r.pod(out.fs);
  r.pod(out.t0);
  char reserved[16];
  r.bytes(reserved, sizeof reserved);
  if (domain > 1 || kind > 1 || scheme > 3 || axis > 1) {
    throw Error::io("corrupt channel-data header in " + path);
  }
  out.domain = domain == 0 ? ChannelData::Domain::EncodedChannels
                           : ChannelData::Domain::DecodedElements;
  out.complex_samples = kind == 1;
  out.scheme = static_cast<SchemeKind>(scheme);
  out.tx_axis = axis == 0 ? Axis::Rows : Axis::Columns;
  out.n_events = static_cast<int>(n_events);
  if (out.complex_samples) {
    out.cplx_samples = Cube<cplx>(d0, d1, d2);
    r.bytes(out.cplx_samples.data.data(), out.cplx_samples.data.size() * sizeof(cplx));
  } else {
    out.real_samples = Cube<double>(d0, d1, d2);
    r.bytes(out.real_samples.data.data(), out.real_samples.data.size() * sizeof(double));
  }
  return out;
}

namespace {

void write_volume_header(Writer& w, const GridSpec& g, std::uint16_t kind) {
  w.bytes(kVolMagic, 8);
  for (int d : g.counts) w.pod(static_cast<std::uint16_t>(d));
  w.pod(kind);
  w.pod(g.spacing.x);
  w.pod(g.spacing.y);
  w.pod(g.spacing.z);
  w.pod(g.origin.x);
  w.pod(g.origin.y);
  w.pod(g.origin.z);
}

GridSpec read_volume_header(Reader& r, std::uint16_t& kind) {
  char magic[8];
  r.bytes(magic, 8);
  if (std::memcmp(magic, kVolMagic, 8) != 0) {
    throw Error::io("container magic mismatch: " + r.path + " is not a volume (HERCVOL1)");
  }
  std::uint16_t d[3];
  r.pod(d[0]);
  r.pod(d[1]);
  r.pod(d[2]);
  r.pod(kind);
  GridSpec g;
  g.counts = {d[0], d[1], d[2]};
  r.pod(g.spacing.x);
  r.pod(g.spacing.y);
  r.pod(g.spacing.z);
  r.pod(g.origin.x);
  r.pod(g.origin.y);
  r.pod(g.origin.z);
  if (kind > 1) throw Error::io("corrupt volume header in " + r.path);
  return g;
}

}  // namespace

void write_volume(const RealVolume& volume, const std::string& path) {
  Writer w(path);
  write_volume_header(w, volume.grid, 0);
  write_cube_f64(w, volume.values);
  w.finish();
}

void write_volume(const VolumeGrid& volume, const std::string& path) {
  Writer w(path);
  write_volume_header(w, volume.grid, 1);
  write_cube_c128(w, volume.values);
  w.finish();
}

AnyVolume read_volume(const std::string& path) {
  Reader r(path);
  std::uint16_t kind = 0;
  GridSpec g = read_volume_header(r, kind);
  AnyVolume out;
  out.complex_values = kind == 1;
  if (kind == 1) {
    out.cplx = VolumeGrid(g);
    r.bytes(out.cplx.values.data(), out.cplx.values.size() * sizeof(cplx));
  } else {
    out.real = RealVolume(g);
    r.bytes(out.real.values.data(), out.real.values.size() * sizeof(double));
  }
  return out;
}

void write_db_slice_pgm(const RealVolume& vol, SlicePlane plane, double range_db,
                        const std::string& path) {
  const auto& g = vol.grid;
  int w = 0, h = 0;
  switch (plane) {
    case SlicePlane::LateralAxial: w = g.counts[0]; h = g.counts[2]; break;
    case SlicePlane::ElevationalAxial: w = g.counts[1]; h = g.counts[2]; break;
    case SlicePlane::LateralElevational: w = g.counts[0]; h = g.counts[1]; break;
  }
  std::vector<unsigned char> pix(static_cast<std::size_t>(w) * h);
  auto shade = [&](double db) {
    double t = (db + range_db) / range_db * 255.0;
    long v = std::lround(t);
    return static_cast<unsigned char>(std::clamp(v, 0L, 255L));
  };
  int mx = g.counts[0] / 2, my = g.counts[1] / 2, mz = g.counts[2] / 2;
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      double db = 0.0;
      switch (plane) {
        case SlicePlane::LateralAxial: db = vol.values[g.index(col, my, row)]; break;
        case SlicePlane::ElevationalAxial: db = vol.values[g.index(mx, col, row)]; break;
        case SlicePlane::LateralElevational: db = vol.values[g.index(col, row, mz)]; break;
      }
      pix[static_cast<std::size_t>(row) * w + col] = shade(db);
    }
  }
  Writer out(path);
  char header[64];
  int n = std::snprintf(header, sizeof header, "P5\n%d %d\n255\n", w, h);
  out.bytes(header, static_cast<std::size_t>(n));
  out.bytes(pix.data(), pix.size());
  out.finish();
}

void write_key_values(const std::vector<std::pair<std::string, std::string>>& kv,
                      const std::string& path) {
  std::string text;
  for (const auto& [k, v] : kv) {
    text += k;
    text += " = ";
    text += v;
    text += '\n';
  }
  write_text_file(text, path);
}

std::map<std::string, std::string> read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error::io("cannot open " + path);
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

void write_text_file(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error::io("cannot open " + path + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error::io("write failed for " + path);
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error::io("cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[65536];
  while (in) {
    in.read(buf, sizeof buf);
    auto got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace herc
