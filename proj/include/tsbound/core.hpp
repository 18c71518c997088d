#ifndef TSBOUND_CORE_HPP
#define TSBOUND_CORE_HPP

#include <cstddef>
#include <vector>

#include "tsbound/series.hpp"

namespace tsbound {

// Z-score over the full series, population denominator (N). A constant series
// maps to all zeros. Requires length >= 2.
TimeSeries zscore_normalize(const TimeSeries& series);
std::vector<double> zscore_normalize(const std::vector<double>& values);

// Start offsets of the sliding windows: 0, stride, 2*stride, ... while the
// window still fits. Throws TooShortError when the series is shorter than the
// window length.
std::vector<std::size_t> window_offsets(std::size_t series_len, const WindowConfig& config);

// Closed-form window count floor((len - L) / stride) + 1 for len >= L.
std::size_t window_count(std::size_t series_len, const WindowConfig& config);

// Materialized windows x[i : i+L] in offset order.
std::vector<std::vector<double>> split_windows(const TimeSeries& series, const WindowConfig& config);

// Full two-sided amplitude spectrum of one window (unnormalized forward DFT).
// Requires length >= 2 and finite values.
AmplitudeSpectrum dft_amplitude(const std::vector<double>& window);

} // namespace tsbound

#endif
