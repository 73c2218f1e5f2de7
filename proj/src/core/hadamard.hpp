#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/tensor.hpp"

namespace herc {

struct HadamardMatrix {
  int order = 0;
  std::vector<std::int8_t> entries;  // row-major, values in {+1, -1}

  [[nodiscard]] int sign(int row, int col) const {
    return entries[static_cast<std::size_t>(row) * order + col];
  }
};

bool is_power_of_two(int n);

// Sylvester construction; first row and first column all +1.
HadamardMatrix sylvester(int order);

// Per-event bias states of the encoded side: signs[e][ch] = H[e][ch].
struct BiasSchedule {
  int n_events = 0;
  int n_channels = 0;
  HadamardMatrix hadamard;

  static BiasSchedule from_order(int order) {
    BiasSchedule s;
    s.hadamard = sylvester(order);
    s.n_events = order;
    s.n_channels = order;
    return s;
  }

  [[nodiscard]] int sign(int event, int channel) const { return hadamard.sign(event, channel); }
};

// Drive polarity that compensates the bias-induced inversion: equal to the
// bias sign, so sign_drive * sign_bias = +1 on every channel of every event.
std::vector<std::int8_t> transmit_polarity(const BiasSchedule& schedule, int event);

// g[e][c][t] = sum_r H[e][r] * s[r][c][t]
template <typename T>
Cube<T> encode(const Cube<T>& element_signals, const HadamardMatrix& h) {
  const std::size_t n = static_cast<std::size_t>(h.order);
  if (element_signals.dims[0] != n) {
    throw Error::validation("encode: matrix order " + std::to_string(h.order) +
                            " does not match first tensor dimension " +
                            std::to_string(element_signals.dims[0]));
  }
  Cube<T> g(n, element_signals.dims[1], element_signals.dims[2]);
  const std::size_t plane = element_signals.dims[1] * element_signals.dims[2];
  for (std::size_t e = 0; e < n; ++e) {
    T* dst = g.data.data() + e * plane;
    for (std::size_t r = 0; r < n; ++r) {
      const T* src = element_signals.data.data() + r * plane;
      if (h.sign(static_cast<int>(e), static_cast<int>(r)) > 0) {
        for (std::size_t i = 0; i < plane; ++i) dst[i] += src[i];
      } else {
        for (std::size_t i = 0; i < plane; ++i) dst[i] -= src[i];
      }
    }
  }
  return g;
}

// s_hat = (1/order) * H^T * g; exact inverse of encode up to rounding.
template <typename T>
Cube<T> decode(const Cube<T>& channel_signals, const HadamardMatrix& h) {
  const std::size_t n = static_cast<std::size_t>(h.order);
  if (channel_signals.dims[0] != n) {
    throw Error::validation("decode: matrix order " + std::to_string(h.order) +
                            " does not match event dimension " +
                            std::to_string(channel_signals.dims[0]));
  }
  Cube<T> s(n, channel_signals.dims[1], channel_signals.dims[2]);
  const std::size_t plane = channel_signals.dims[1] * channel_signals.dims[2];
  const double scale = 1.0 / static_cast<double>(h.order);
  for (std::size_t r = 0; r < n; ++r) {
    T* dst = s.data.data() + r * plane;
    for (std::size_t e = 0; e < n; ++e) {
      const T* src = channel_signals.data.data() + e * plane;
      if (h.sign(static_cast<int>(e), static_cast<int>(r)) > 0) {
        for (std::size_t i = 0; i < plane; ++i) dst[i] += src[i];
      } else {
        for (std::size_t i = 0; i < plane; ++i) dst[i] -= src[i];
      }
    }
    for (std::size_t i = 0; i < plane; ++i) dst[i] *= scale;
  }
  return s;
}

// events x channels table of +1/-1, one row per event
std::string bias_schedule_csv(const BiasSchedule& schedule);

}  // namespace herc
