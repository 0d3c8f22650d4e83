#pragma once

#include <complex>

namespace fbns::detail {

// In-place complex-to-complex FFT.  sign is FFTW_FORWARD (-1) or
// FFTW_BACKWARD (+1); no normalization is applied either way.  Plans are
// created once per shape with FFTW_ESTIMATE (deterministic, unlike measured
// planning) and reused; execution on caller buffers is thread-safe.
void fft_1d(std::complex<double>* data, int n, int sign);
void fft_nd(std::complex<double>* data, const int* dims, int rank, int sign);

}  // namespace fbns::detail
