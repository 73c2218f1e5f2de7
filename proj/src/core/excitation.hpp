#pragma once

#include <vector>

namespace herc {

enum class ExcitationKind { GatedSine, LinearChirp };

struct Excitation {
  ExcitationKind kind = ExcitationKind::GatedSine;
  double f0 = 0.0;       // [Hz] start frequency (== f1 for a gated sine)
  double f1 = 0.0;       // [Hz] end frequency
  double duration = 0.0; // [s]
  double fs = 0.0;       // [Hz]
  std::vector<double> samples;  // unit peak amplitude
};

// cycles/fc long sine burst sampled at fs, normalized to unit peak
Excitation gated_sine(double fc, double cycles, double fs);

// linear sweep f0 -> f1 with a cosine amplitude ramp over taper_fraction of
// the duration at each end
Excitation linear_chirp(double f0, double f1, double duration, double fs,
                        double taper_fraction = 0.2);

}  // namespace herc
