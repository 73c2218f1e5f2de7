#include "core/excitation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "core/error.hpp"

namespace herc {

namespace {

void check_band(double f, double fs, const char* which) {
  if (f <= 0.0) throw Error::validation(std::string("excitation: ") + which + " must be positive");
  if (f >= fs / 2.0) {
    throw Error::validation(std::string("excitation: ") + which + " violates Nyquist (fs/2 = " +
                            std::to_string(fs / 2.0) + " Hz)");
  }
}

void normalize_peak(std::vector<double>& w) {
  double peak = 0.0;
  for (double v : w) peak = std::max(peak, std::abs(v));
  if (peak > 0.0) {
    for (double& v : w) v /= peak;
  }
}

}  // namespace

Excitation gated_sine(double fc, double cycles, double fs) {
  if (fs <= 0.0) throw Error::validation("excitation: fs must be positive");
  check_band(fc, fs, "fc");
  if (cycles <= 0.0) throw Error::validation("excitation: cycle count must be positive");
  Excitation e;
  e.kind = ExcitationKind::GatedSine;
  e.f0 = e.f1 = fc;
  e.fs = fs;
  e.duration = cycles / fc;
  auto n = static_cast<std::size_t>(std::llround(e.duration * fs));
  if (n < 2) throw Error::validation("excitation: fewer than 2 samples; increase fs or cycles");
  e.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double t = static_cast<double>(k) / fs;
    e.samples[k] = std::sin(2.0 * std::numbers::pi * fc * t);
  }
  normalize_peak(e.samples);
  return e;
}

Excitation linear_chirp(double f0, double f1, double duration, double fs, double taper_fraction) {
  if (fs <= 0.0) throw Error::validation("excitation: fs must be positive");
  check_band(f0, fs, "f0");
  check_band(f1, fs, "f1");
  if (duration <= 0.0) throw Error::validation("excitation: duration must be positive");
  if (taper_fraction < 0.0 || taper_fraction > 0.5) {
    throw Error::validation("excitation: taper fraction must be in [0, 0.5]");
  }
  Excitation e;
  e.kind = ExcitationKind::LinearChirp;
  e.f0 = f0;
  e.f1 = f1;
  e.fs = fs;
  e.duration = duration;
  auto n = static_cast<std::size_t>(std::llround(duration * fs));
  if (n < 2) throw Error::validation("excitation: fewer than 2 samples; increase fs or duration");
  e.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double t = static_cast<double>(k) / fs;
    double phase = 2.0 * std::numbers::pi * (f0 * t + (f1 - f0) * t * t / (2.0 * duration));
    e.samples[k] = std::sin(phase);
  }
  auto ramp = static_cast<std::size_t>(std::llround(taper_fraction * static_cast<double>(n)));
  for (std::size_t k = 0; k < ramp; ++k) {
    double w = 0.5 - 0.5 * std::cos(std::numbers::pi * static_cast<double>(k) / static_cast<double>(ramp));
    e.samples[k] *= w;
    e.samples[n - 1 - k] *= w;
  }
  normalize_peak(e.samples);
  return e;
}

}  // namespace herc
