#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace reso {

// Thin wrapper over FFTW (double precision, FFTW_ESTIMATE plans, plan cache
// guarded by a mutex). Arbitrary lengths are supported; inverse transforms
// are scaled by 1/n.
std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& in);
std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& in);

// Forward transform of a real signal; returns the full n-point complex
// spectrum.
std::vector<std::complex<double>> fft_real(const std::vector<double>& in);

// Inverse of a full complex spectrum, keeping the real part.
std::vector<double> ifft_to_real(const std::vector<std::complex<double>>& in);

} // namespace reso
