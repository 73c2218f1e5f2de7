#include "core/beamform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "core/error.hpp"
#include "core/parallel.hpp"

namespace herc {

bool GridSpec::same_as(const GridSpec& o) const {
  return counts == o.counts && origin.x == o.origin.x && origin.y == o.origin.y &&
         origin.z == o.origin.z && spacing.x == o.spacing.x && spacing.y == o.spacing.y &&
         spacing.z == o.spacing.z;
}

GridSpec make_centered_grid(const Vec3& center, const Vec3& half_extents, const Vec3& spacing) {
  if (spacing.x <= 0.0 || spacing.y <= 0.0 || spacing.z <= 0.0) {
    throw Error::validation("grid: spacing must be positive");
  }
  GridSpec g;
  g.spacing = spacing;
  auto half_counts = [](double half, double step) {
    return static_cast<int>(std::llround(half / step));
  };
  int hx = half_counts(half_extents.x, spacing.x);
  int hy = half_counts(half_extents.y, spacing.y);
  int hz = half_counts(half_extents.z, spacing.z);
  g.counts = {2 * hx + 1, 2 * hy + 1, 2 * hz + 1};
  g.origin = {center.x - hx * spacing.x, center.y - hy * spacing.y, center.z - hz * spacing.z};
  return g;
}

namespace {

inline double window_weight(WindowKind kind, double fnum, double u_ch, double u_v, double z_v,
                            double aperture_half) {
  if (kind == WindowKind::None) return 1.0;
  double halfap = fnum > 0.0 ? z_v / (2.0 * fnum) : aperture_half;
  double du = fnum > 0.0 ? u_ch - u_v : u_ch;
  if (std::abs(du) > halfap || halfap <= 0.0) return 0.0;
  double s = std::cos(0.5 * std::numbers::pi * du / halfap);
  return s * s;
}

inline cplx sample_trace(const cplx* tr, int nt, double u) {
  int k0 = static_cast<int>(std::floor(u));
  double frac = u - static_cast<double>(k0);
  cplx acc{};
  if (k0 >= 0 && k0 < nt) acc += (1.0 - frac) * tr[k0];
  if (k0 + 1 >= 0 && k0 + 1 < nt) acc += frac * tr[k0 + 1];
  return acc;
}

}  // namespace

Cube<double> matched_filter(const Cube<double>& traces, const std::vector<double>& kernel,
                            int threads) {
  if (kernel.empty()) throw Error::validation("matched_filter: empty excitation kernel");
  const auto nt = traces.dims[2];
  if (kernel.size() > nt) {
    throw Error::validation("matched_filter: excitation (" + std::to_string(kernel.size()) +
                            " samples) is longer than the traces (" + std::to_string(nt) + ")");
  }
  double energy = 0.0;
  for (double v : kernel) energy += v * v;
  if (energy <= 0.0) throw Error::validation("matched_filter: zero-energy excitation kernel");
  const double norm = 1.0 / std::sqrt(energy);

  const std::size_t m = next_pow2(nt + kernel.size());
  std::vector<cplx> kspec(m, cplx{});
  for (std::size_t i = 0; i < kernel.size(); ++i) kspec[i] = kernel[i] * norm;
  fft(kspec, false);

  Cube<double> out(traces.dims[0], traces.dims[1], nt);
  const std::size_t n_traces = traces.dims[0] * traces.dims[1];
  parallel_for(n_traces, threads, [&](std::size_t b, std::size_t e) {
    std::vector<cplx> buf(m);
    for (std::size_t i = b; i < e; ++i) {
      const double* src = traces.data.data() + i * nt;
      std::fill(buf.begin(), buf.end(), cplx{});
      for (std::size_t t = 0; t < nt; ++t) buf[t] = src[t];
      fft(buf, false);
      for (std::size_t t = 0; t < m; ++t) buf[t] *= std::conj(kspec[t]);
      fft(buf, true);
      double* dst = out.data.data() + i * nt;
      for (std::size_t t = 0; t < nt; ++t) dst[t] = buf[t].real();
    }
  });
  return out;
}

Cube<cplx> analytic_signal(const Cube<double>& traces, int threads) {
  const auto nt = traces.dims[2];
  if (nt < 2) throw Error::validation("analytic_signal: traces need at least 2 samples");
  Cube<cplx> out(traces.dims[0], traces.dims[1], nt);
  const std::size_t n_traces = traces.dims[0] * traces.dims[1];
  parallel_for(n_traces, threads, [&](std::size_t b, std::size_t e) {
    std::vector<cplx> buf(nt);
    for (std::size_t i = b; i < e; ++i) {
      const double* src = traces.data.data() + i * nt;
      for (std::size_t t = 0; t < nt; ++t) buf[t] = src[t];
      fft(buf, false);
      // one-sided spectrum: keep DC (and Nyquist for even n), double positives
      if (nt % 2 == 0) {
        for (std::size_t t = 1; t < nt / 2; ++t) buf[t] *= 2.0;
        for (std::size_t t = nt / 2 + 1; t < nt; ++t) buf[t] = cplx{};
      } else {
        for (std::size_t t = 1; t <= (nt - 1) / 2; ++t) buf[t] *= 2.0;
        for (std::size_t t = (nt + 1) / 2; t < nt; ++t) buf[t] = cplx{};
      }
      fft(buf, true);
      cplx* dst = out.data.data() + i * nt;
      // the imaginary part is the quadrature; force the real part exact
      for (std::size_t t = 0; t < nt; ++t) dst[t] = cplx(src[t], buf[t].imag());
    }
  });
  return out;
}

VolumeGrid das_elements(const Cube<cplx>& elements, Axis biased_axis, const ArrayGeometry& geom,
                        const TxWavefront& law, double fs, double t0, const GridSpec& grid,
                        const RxApodization& apod, int threads) {
  const int nb = static_cast<int>(elements.dims[0]);
  const int nq = static_cast<int>(elements.dims[1]);
  const int nt = static_cast<int>(elements.dims[2]);
  if (nb != geom.channel_count(biased_axis) || nq != geom.channel_count(orthogonal(biased_axis))) {
    throw Error::validation("das: decoded element dimensions do not match the geometry");
  }
  if (fs <= 0.0) throw Error::validation("das: channel data lacks sampling metadata");

  // element coordinates in (biased, orthogonal) channel order
  const std::size_t n_elem = static_cast<std::size_t>(nb) * nq;
  std::vector<double> exs(n_elem), eys(n_elem);
  std::vector<const cplx*> trs(n_elem);
  std::size_t i = 0;
  for (int b = 0; b < nb; ++b) {
    for (int q = 0; q < nq; ++q, ++i) {
      double ub = geom.channel_position(biased_axis, b);
      double uq = geom.channel_position(orthogonal(biased_axis), q);
      exs[i] = biased_axis == Axis::Columns ? ub : uq;
      eys[i] = biased_axis == Axis::Columns ? uq : ub;
      trs[i] = elements.row(static_cast<std::size_t>(b), static_cast<std::size_t>(q));
    }
  }
  const double half_x = geom.aperture_x() / 2.0;
  const double half_y = geom.aperture_y() / 2.0;
  const double c = geom.speed_of_sound;

  VolumeGrid vol(grid);
  const int nx = grid.counts[0];
  const int ny = grid.counts[1];
  parallel_for(grid.size(), threads, [&](std::size_t vb, std::size_t ve) {
    for (std::size_t vi = vb; vi < ve; ++vi) {
      int ix = static_cast<int>(vi % nx);
      int iy = static_cast<int>((vi / nx) % ny);
      int iz = static_cast<int>(vi / (static_cast<std::size_t>(nx) * ny));
      Vec3 v = grid.position(ix, iy, iz);
      double ttx = law.tx_delay(v, c);
      cplx acc{};
      for (std::size_t p = 0; p < n_elem; ++p) {
        double w = window_weight(apod.lateral, apod.fnumber_lateral, exs[p], v.x, v.z, half_x) *
                   window_weight(apod.elevational, apod.fnumber_elevational, eys[p], v.y, v.z,
                                 half_y);
        if (w == 0.0) continue;
        double dx = v.x - exs[p];
        double dy = v.y - eys[p];
        double trx = std::sqrt(dx * dx + dy * dy + v.z * v.z) / c;
        acc += w * sample_trace(trs[p], nt, (ttx + trx - t0) * fs);
      }
      vol.values[vi] = acc;
    }
  });
  return vol;
}

VolumeGrid das_line_event(const Cube<cplx>& data, int event, Axis rx_axis,
                          const ArrayGeometry& geom, const TxWavefront& law, double fs, double t0,
                          const GridSpec& grid, const RxApodization& apod, int threads) {
  const int nq = static_cast<int>(data.dims[1]);
  const int nt = static_cast<int>(data.dims[2]);
  if (event < 0 || event >= static_cast<int>(data.dims[0])) {
    throw Error::validation("das: event index out of range");
  }
  if (nq != geom.channel_count(rx_axis)) {
    throw Error::validation("das: receive channel count does not match the geometry");
  }
  if (fs <= 0.0) throw Error::validation("das: channel data lacks sampling metadata");

  std::vector<double> us(static_cast<std::size_t>(nq));
  std::vector<const cplx*> trs(static_cast<std::size_t>(nq));
  for (int q = 0; q < nq; ++q) {
    us[static_cast<std::size_t>(q)] = geom.channel_position(rx_axis, q);
    trs[static_cast<std::size_t>(q)] =
        data.row(static_cast<std::size_t>(event), static_cast<std::size_t>(q));
  }
  const double half_u = geom.aperture(rx_axis) / 2.0;
  const double c = geom.speed_of_sound;

  VolumeGrid vol(grid);
  const int nx = grid.counts[0];
  const int ny = grid.counts[1];
  parallel_for(grid.size(), threads, [&](std::size_t vb, std::size_t ve) {
    for (std::size_t vi = vb; vi < ve; ++vi) {
      int ix = static_cast<int>(vi % nx);
      int iy = static_cast<int>((vi / nx) % ny);
      int iz = static_cast<int>(vi / (static_cast<std::size_t>(nx) * ny));
      Vec3 v = grid.position(ix, iy, iz);
      double uv = rx_axis == Axis::Rows ? v.y : v.x;
      double ttx = law.tx_delay(v, c);
      cplx acc{};
      for (int q = 0; q < nq; ++q) {
        double w = window_weight(apod.line, apod.fnumber_line, us[static_cast<std::size_t>(q)], uv,
                                 v.z, half_u);
        if (w == 0.0) continue;
        double du = uv - us[static_cast<std::size_t>(q)];
        double trx = std::sqrt(du * du + v.z * v.z) / c;
        acc += w * sample_trace(trs[static_cast<std::size_t>(q)], nt, (ttx + trx - t0) * fs);
      }
      vol.values[vi] = acc;
    }
  });
  return vol;
}

void compound_into(VolumeGrid& acc, const VolumeGrid& v) {
  if (!acc.grid.same_as(v.grid)) throw Error::validation("compound: volume grids differ");
  for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += v.values[i];
}

VolumeGrid compound(const std::vector<VolumeGrid>& volumes) {
  if (volumes.empty()) throw Error::validation("compound: no volumes");
  VolumeGrid acc = volumes.front();
  for (std::size_t i = 1; i < volumes.size(); ++i) compound_into(acc, volumes[i]);
  return acc;
}

RealVolume envelope(const VolumeGrid& v) {
  RealVolume out(v.grid);
  for (std::size_t i = 0; i < v.values.size(); ++i) out.values[i] = std::abs(v.values[i]);
  return out;
}

RealVolume envelope_db(const VolumeGrid& v, double floor_db) {
  double peak = 0.0;
  for (const auto& x : v.values) peak = std::max(peak, std::abs(x));
  if (peak <= 0.0) throw Error::validation("envelope_db: all-zero volume");
  RealVolume out(v.grid);
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    double a = std::abs(v.values[i]) / peak;
    double db = a > 0.0 ? 20.0 * std::log10(a) : floor_db;
    out.values[i] = std::max(db, floor_db);
  }
  return out;
}

VolumeGrid reconstruct_complex(const TransmitScheme& scheme, const ChannelData& raw,
                               const Excitation& exc, const ArrayGeometry& geom,
                               const GridSpec& grid, const RxApodization& apod, int threads) {
  validate_scheme(scheme, geom);
  if (raw.scheme != scheme.kind) {
    throw Error::validation("reconstruct: channel data was produced by scheme '" +
                            std::string(scheme_name(raw.scheme)) + "', expected '" +
                            scheme_name(scheme.kind) + "'");
  }

  Cube<cplx> analytic;
  if (raw.complex_samples) {
    if (raw.domain != ChannelData::Domain::DecodedElements) {
      throw Error::validation("reconstruct: complex input must be decoded element data");
    }
    analytic = raw.cplx_samples;
  } else {
    auto filtered = matched_filter(raw.real_samples, exc.samples, threads);
    analytic = analytic_signal(filtered, threads);
  }

  if (is_hero(scheme.kind)) {
    Cube<cplx> decoded;
    if (raw.domain == ChannelData::Domain::DecodedElements) {
      decoded = std::move(analytic);
    } else {
      auto h = sylvester(raw.n_events);
      decoded = decode(analytic, h);
    }
    auto law = tx_wavefront(scheme, geom, 0);
    return das_elements(decoded, scheme.tx_axis, geom, law, raw.fs, raw.t0, grid, apod, threads);
  }

  if (raw.domain != ChannelData::Domain::EncodedChannels) {
    throw Error::validation("reconstruct: line-channel schemes take encoded channel data");
  }
  VolumeGrid acc(grid);
  for (int e = 0; e < scheme.n_events; ++e) {
    auto setup = tx_channel_setup(scheme, geom, nullptr, e);
    auto law = tx_wavefront(scheme, geom, e);
    auto v = das_line_event(analytic, e, setup.rx_axis, geom, law, raw.fs, raw.t0, grid, apod,
                            threads);
    compound_into(acc, v);
  }
  return acc;
}

RealVolume reconstruct(const TransmitScheme& scheme, const ChannelData& raw, const Excitation& exc,
                       const ArrayGeometry& geom, const GridSpec& grid, const RxApodization& apod,
                       int threads, double floor_db) {
  return envelope_db(reconstruct_complex(scheme, raw, exc, geom, grid, apod, threads), floor_db);
}

}  // namespace herc
