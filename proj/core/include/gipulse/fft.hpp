#ifndef GIPULSE_FFT_HPP
#define GIPULSE_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace gipulse::fft {

/// Unnormalized forward DFT, any length. Backed by FFTW3; plans are cached
/// per length behind a mutex, execution is lock-free and thread-safe.
std::vector<std::complex<double>> forward(const std::vector<std::complex<double>>& in);

/// Inverse DFT including the 1/N factor, so inverse(forward(x)) == x.
std::vector<std::complex<double>> inverse(const std::vector<std::complex<double>>& in);

/// Forward DFT of a real signal zero-padded to n_out (n_out >= in.size()).
std::vector<std::complex<double>> forward_real_padded(const std::vector<double>& in,
                                                      std::size_t n_out);

std::size_t next_pow2(std::size_t n);

} // namespace gipulse::fft

#endif
