#ifndef TSBOUND_FFT_HPP
#define TSBOUND_FFT_HPP

#include <complex>
#include <vector>

namespace tsbound::fft {

// Forward DFT, unnormalized: X[k] = sum_t x[t] * exp(-2*pi*i*k*t/n).
// Radix-2 for power-of-two sizes, Bluestein's chirp-z otherwise, so any
// length is O(n log n).
std::vector<std::complex<double>> transform(std::vector<std::complex<double>> input);

// Amplitude spectrum |DFT(x)| of a real window, length = window length.
std::vector<double> amplitude(const std::vector<double>& window);

} // namespace tsbound::fft

#endif
