#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace herc {

using cplx = std::complex<double>;

// In-place complex FFT for any length >= 1 (radix-2 for powers of two,
// Bluestein otherwise). Inverse includes the 1/N scaling.
void fft(std::vector<cplx>& a, bool inverse);

std::size_t next_pow2(std::size_t n);

}  // namespace herc
