#pragma once

#include <cstdint>
#include <vector>

#include "core/excitation.hpp"
#include "core/geometry.hpp"
#include "core/hadamard.hpp"
#include "core/scene.hpp"
#include "core/scheme.hpp"
#include "core/tensor.hpp"

namespace herc {

struct ChannelData {
  enum class Domain { EncodedChannels, DecodedElements };
  Domain domain = Domain::EncodedChannels;
  SchemeKind scheme = SchemeKind::HerculesPlane;
  Axis tx_axis = Axis::Columns;
  int n_events = 0;
  double fs = 0.0;  // [Hz]
  double t0 = 0.0;  // [s] time of first sample relative to transmit
  // encoded: [event][rx channel][t]; decoded: [biased channel][rx channel][t]
  bool complex_samples = false;
  Cube<double> real_samples;
  Cube<cplx> cplx_samples;
};

// Smallest sample count that contains every echo of every event.
int required_time_samples(const Scene& scene, const ArrayGeometry& geom,
                          const TransmitScheme& scheme, const Excitation& exc);

// RF traces of one transmit event on the receive channels orthogonal to the
// transmit axis: out[q][t] for q in [0, n_rx). Per receive channel, the sum
// over its elements of the bias-signed per-scatterer echoes, with two-way
// spherical spreading and linear interpolation into the excitation waveform.
void simulate_event(const Scene& scene, const ArrayGeometry& geom, const TransmitScheme& scheme,
                    const BiasSchedule* schedule, const Excitation& exc, int event, double* out,
                    int n_rx, int nt, int threads);

// All events stacked: [event][rx channel][t].
ChannelData simulate_events(const Scene& scene, const ArrayGeometry& geom,
                            const TransmitScheme& scheme, const BiasSchedule* schedule,
                            const Excitation& exc, int threads, int nt = 0);

// Ground-truth per-element signals with no bias summation:
// [transmit-axis channel][receive-axis channel][t].
Cube<double> simulate_matrix_reference(const Scene& scene, const ArrayGeometry& geom,
                                       const TransmitScheme& scheme, const Excitation& exc,
                                       int threads, int nt = 0);

// Transmitted field time series at a probe point for one event (superposition
// of all active transmit elements with drive*bias polarity).
std::vector<double> incident_field(const Vec3& probe, const ArrayGeometry& geom,
                                   const TransmitScheme& scheme, const BiasSchedule* schedule,
                                   const Excitation& exc, int event, int nt);

// Additive white Gaussian noise at the requested SNR measured over the
// nonzero-signal support. +infinity leaves the data untouched.
void add_noise(ChannelData& data, double snr_db, std::uint64_t seed);

}  // namespace herc
