#include "core/wavesim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace herc {

namespace {

// trace[i] += amp * w((i - tau_samples) interpolated), zero outside [0, L)
inline void add_pulse(double* trace, int nt, const double* w, int len, double tau_samples,
                      double amp) {
  int first = static_cast<int>(std::floor(tau_samples));
  int last = first + len;  // inclusive; covers the full triangle support
  if (first < 0) first = 0;
  if (last > nt - 1) last = nt - 1;
  for (int i = first; i <= last; ++i) {
    double u = static_cast<double>(i) - tau_samples;
    if (u <= -1.0 || u >= static_cast<double>(len)) continue;
    int j = static_cast<int>(std::floor(u));
    double frac = u - static_cast<double>(j);
    double lo = j >= 0 ? w[j] : 0.0;
    double hi = j + 1 < len ? w[j + 1] : 0.0;
    trace[i] += amp * (lo + frac * (hi - lo));
  }
}

struct ElementTable {
  std::vector<Vec3> pos;           // element centers, row-major over (row, col)
  std::vector<int> tx_channel;     // channel index along the given tx axis
  std::vector<int> rx_channel;     // channel index along the orthogonal axis
};

ElementTable element_table(const ArrayGeometry& geom, Axis tx_axis) {
  ElementTable t;
  auto n = static_cast<std::size_t>(geom.n_rows) * static_cast<std::size_t>(geom.n_cols);
  t.pos.reserve(n);
  t.tx_channel.reserve(n);
  t.rx_channel.reserve(n);
  for (int r = 0; r < geom.n_rows; ++r) {
    for (int c = 0; c < geom.n_cols; ++c) {
      t.pos.push_back(geom.element_center(r, c));
      int col_idx = c;
      int row_idx = r;
      t.tx_channel.push_back(tx_axis == Axis::Columns ? col_idx : row_idx);
      t.rx_channel.push_back(tx_axis == Axis::Columns ? row_idx : col_idx);
    }
  }
  return t;
}

// per (scatterer, element) distances [k*E + p]
std::vector<double> distance_table(const Scene& scene, const ElementTable& elems) {
  std::vector<double> d(scene.scatterers.size() * elems.pos.size());
  std::size_t i = 0;
  for (const auto& s : scene.scatterers) {
    for (const auto& p : elems.pos) d[i++] = distance(s.position, p);
  }
  return d;
}

void check_window(int nt, int needed) {
  if (nt < needed) {
    throw Error::validation("wavesim: time window of " + std::to_string(nt) +
                            " samples is too short to contain all echoes; need at least " +
                            std::to_string(needed));
  }
}

}  // namespace

int required_time_samples(const Scene& scene, const ArrayGeometry& geom,
                          const TransmitScheme& scheme, const Excitation& exc) {
  if (scene.scatterers.empty()) return static_cast<int>(exc.samples.size()) + 2;
  // element positions (and hence distances) do not depend on the axis mapping
  auto elems = element_table(geom, scheme.tx_axis);
  auto dist = distance_table(scene, elems);
  const double c = scene.speed_of_sound;
  const std::size_t ne = elems.pos.size();
  const std::size_t ns = scene.scatterers.size();

  std::vector<double> max_rx(ns, 0.0);
  for (std::size_t k = 0; k < ns; ++k) {
    for (std::size_t p = 0; p < ne; ++p) max_rx[k] = std::max(max_rx[k], dist[k * ne + p] / c);
  }

  double max_delay = 0.0;
  // HERO transmit geometry is constant across events
  int n_event_geoms = is_hero(scheme.kind) ? 1 : scheme.n_events;
  for (int e = 0; e < n_event_geoms; ++e) {
    auto setup = tx_channel_setup(scheme, geom, nullptr, e);
    auto et = element_table(geom, setup.tx_axis);
    for (std::size_t k = 0; k < ns; ++k) {
      double max_tx = 0.0;
      for (std::size_t p = 0; p < ne; ++p) {
        auto ch = static_cast<std::size_t>(et.tx_channel[p]);
        if (setup.active[ch]) {
          max_tx = std::max(max_tx, setup.delays[ch] + dist[k * ne + p] / c);
        }
      }
      max_delay = std::max(max_delay, max_tx + max_rx[k]);
    }
  }
  return static_cast<int>(std::ceil(max_delay * exc.fs)) +
         static_cast<int>(exc.samples.size()) + 2;
}

void simulate_event(const Scene& scene, const ArrayGeometry& geom, const TransmitScheme& scheme,
                    const BiasSchedule* schedule, const Excitation& exc, int event, double* out,
                    int n_rx, int nt, int threads) {
  validate_scene(scene);
  validate_scheme(scheme, geom);
  if (is_hero(scheme.kind) && schedule == nullptr) {
    throw Error::validation("wavesim: HERO simulation needs a bias schedule");
  }
  auto setup = tx_channel_setup(scheme, geom, schedule, event);
  if (n_rx != geom.channel_count(setup.rx_axis)) {
    throw Error::validation("wavesim: receive channel count mismatch");
  }
  check_window(nt, required_time_samples(scene, geom, scheme, exc));
  std::fill(out, out + static_cast<std::size_t>(n_rx) * nt, 0.0);
  if (scene.scatterers.empty()) return;

  auto elems = element_table(geom, setup.tx_axis);
  auto dist = distance_table(scene, elems);
  const double c = scene.speed_of_sound;
  const std::size_t ne = elems.pos.size();
  const std::size_t ns = scene.scatterers.size();

  // per (scatterer, tx element): arrival time and signed spreading amplitude
  std::vector<double> tx_time(ns * ne);
  std::vector<double> tx_amp(ns * ne);
  for (std::size_t k = 0; k < ns; ++k) {
    for (std::size_t p = 0; p < ne; ++p) {
      auto ch = static_cast<std::size_t>(elems.tx_channel[p]);
      double dk = dist[k * ne + p];
      tx_time[k * ne + p] = setup.delays[ch] + dk / c;
      double sign = static_cast<double>(setup.drive[ch]) * static_cast<double>(setup.bias[ch]);
      tx_amp[k * ne + p] = setup.active[ch] ? sign / dk : 0.0;
    }
  }

  // elements of each receive channel, in ascending biased-channel order
  std::vector<std::vector<std::size_t>> rx_members(static_cast<std::size_t>(n_rx));
  for (std::size_t p = 0; p < ne; ++p) {
    rx_members[static_cast<std::size_t>(elems.rx_channel[p])].push_back(p);
  }

  const double* w = exc.samples.data();
  const int len = static_cast<int>(exc.samples.size());
  const double fs = exc.fs;

  parallel_for(static_cast<std::size_t>(n_rx), threads, [&](std::size_t qb, std::size_t qe) {
    for (std::size_t q = qb; q < qe; ++q) {
      double* trace = out + q * static_cast<std::size_t>(nt);
      for (std::size_t p : rx_members[q]) {
        auto bias_ch = static_cast<std::size_t>(elems.tx_channel[p]);
        double rx_sign = static_cast<double>(setup.bias[bias_ch]);
        for (std::size_t k = 0; k < ns; ++k) {
          double dk = dist[k * ne + p];
          double rx_time = dk / c;
          double rx_amp = rx_sign * scene.scatterers[k].reflectivity / dk;
          if (rx_amp == 0.0) continue;
          const double* tt = tx_time.data() + k * ne;
          const double* ta = tx_amp.data() + k * ne;
          for (std::size_t j = 0; j < ne; ++j) {
            if (ta[j] == 0.0) continue;
            add_pulse(trace, nt, w, len, (tt[j] + rx_time) * fs, ta[j] * rx_amp);
          }
        }
      }
    }
  });
}

ChannelData simulate_events(const Scene& scene, const ArrayGeometry& geom,
                            const TransmitScheme& scheme, const BiasSchedule* schedule,
                            const Excitation& exc, int threads, int nt) {
  validate_scheme(scheme, geom);
  if (nt <= 0) nt = required_time_samples(scene, geom, scheme, exc);
  int n_rx = geom.channel_count(orthogonal(scheme.tx_axis));
  if (scheme.kind == SchemeKind::TiltedPlaneWave && scheme.tpw_split_axes) {
    n_rx = geom.n_rows;  // square array enforced by validate_scheme
  }
  ChannelData data;
  data.domain = ChannelData::Domain::EncodedChannels;
  data.scheme = scheme.kind;
  data.tx_axis = scheme.tx_axis;
  data.n_events = scheme.n_events;
  data.fs = exc.fs;
  data.t0 = 0.0;
  data.real_samples = Cube<double>(static_cast<std::size_t>(scheme.n_events),
                                   static_cast<std::size_t>(n_rx), static_cast<std::size_t>(nt));
  for (int e = 0; e < scheme.n_events; ++e) {
    simulate_event(scene, geom, scheme, schedule, exc, e, data.real_samples.row(e, 0), n_rx, nt,
                   threads);
  }
  return data;
}

Cube<double> simulate_matrix_reference(const Scene& scene, const ArrayGeometry& geom,
                                       const TransmitScheme& scheme, const Excitation& exc,
                                       int threads, int nt) {
  validate_scene(scene);
  validate_scheme(scheme, geom);
  if (nt <= 0) nt = required_time_samples(scene, geom, scheme, exc);
  auto setup = tx_channel_setup(scheme, geom, nullptr, 0);  // uniform drive reference
  if (is_hero(scheme.kind)) {
    // per-element ground truth uses the constant effective transmit pattern
    std::fill(setup.drive.begin(), setup.drive.end(), static_cast<std::int8_t>(1));
    std::fill(setup.bias.begin(), setup.bias.end(), static_cast<std::int8_t>(1));
  }
  auto elems = element_table(geom, setup.tx_axis);
  const std::size_t ne = elems.pos.size();
  const std::size_t ns = scene.scatterers.size();
  int n_tx_ch = geom.channel_count(setup.tx_axis);
  int n_rx_ch = geom.channel_count(setup.rx_axis);
  Cube<double> s(static_cast<std::size_t>(n_tx_ch), static_cast<std::size_t>(n_rx_ch),
                 static_cast<std::size_t>(nt));
  if (ns == 0) return s;
  check_window(nt, required_time_samples(scene, geom, scheme, exc));

  auto dist = distance_table(scene, elems);
  const double c = scene.speed_of_sound;
  std::vector<double> tx_time(ns * ne);
  std::vector<double> tx_amp(ns * ne);
  for (std::size_t k = 0; k < ns; ++k) {
    for (std::size_t p = 0; p < ne; ++p) {
      auto ch = static_cast<std::size_t>(elems.tx_channel[p]);
      double dk = dist[k * ne + p];
      tx_time[k * ne + p] = setup.delays[ch] + dk / c;
      double sign = static_cast<double>(setup.drive[ch]) * static_cast<double>(setup.bias[ch]);
      tx_amp[k * ne + p] = setup.active[ch] ? sign / dk : 0.0;
    }
  }

  const double* w = exc.samples.data();
  const int len = static_cast<int>(exc.samples.size());
  const double fs = exc.fs;

  parallel_for(ne, threads, [&](std::size_t pb, std::size_t pe) {
    for (std::size_t p = pb; p < pe; ++p) {
      double* trace = s.row(static_cast<std::size_t>(elems.tx_channel[p]),
                            static_cast<std::size_t>(elems.rx_channel[p]));
      for (std::size_t k = 0; k < ns; ++k) {
        double dk = dist[k * ne + p];
        double rx_time = dk / c;
        double rx_amp = scene.scatterers[k].reflectivity / dk;
        if (rx_amp == 0.0) continue;
        const double* tt = tx_time.data() + k * ne;
        const double* ta = tx_amp.data() + k * ne;
        for (std::size_t j = 0; j < ne; ++j) {
          if (ta[j] == 0.0) continue;
          add_pulse(trace, nt, w, len, (tt[j] + rx_time) * fs, ta[j] * rx_amp);
        }
      }
    }
  });
  return s;
}

std::vector<double> incident_field(const Vec3& probe, const ArrayGeometry& geom,
                                   const TransmitScheme& scheme, const BiasSchedule* schedule,
                                   const Excitation& exc, int event, int nt) {
  validate_scheme(scheme, geom);
  if (is_hero(scheme.kind) && schedule == nullptr) {
    throw Error::validation("wavesim: HERO incident field needs a bias schedule");
  }
  auto setup = tx_channel_setup(scheme, geom, schedule, event);
  auto elems = element_table(geom, setup.tx_axis);
  std::vector<double> field(static_cast<std::size_t>(nt), 0.0);
  const double c = geom.speed_of_sound;
  for (std::size_t p = 0; p < elems.pos.size(); ++p) {
    auto ch = static_cast<std::size_t>(elems.tx_channel[p]);
    if (!setup.active[ch]) continue;
    double d = distance(probe, elems.pos[p]);
    double sign = static_cast<double>(setup.drive[ch]) * static_cast<double>(setup.bias[ch]);
    add_pulse(field.data(), nt, exc.samples.data(), static_cast<int>(exc.samples.size()),
              (setup.delays[ch] + d / c) * exc.fs, sign / d);
  }
  return field;
}

void add_noise(ChannelData& data, double snr_db, std::uint64_t seed) {
  if (std::isinf(snr_db) && snr_db > 0.0) return;
  if (!std::isfinite(snr_db)) throw Error::validation("add_noise: snr_db must be finite or +inf");
  if (data.complex_samples) throw Error::validation("add_noise: expected real RF samples");
  auto& v = data.real_samples.data;
  double power = 0.0;
  std::size_t support = 0;
  for (double x : v) {
    if (x != 0.0) {
      power += x * x;
      ++support;
    }
  }
  if (support == 0) {
    throw Error::validation("add_noise: zero-signal input with a finite SNR request");
  }
  power /= static_cast<double>(support);
  double sigma = std::sqrt(power / std::pow(10.0, snr_db / 10.0));
  Rng rng(seed);
  for (double& x : v) x += sigma * rng.normal();
}

}  // namespace herc
