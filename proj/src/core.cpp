#include "tsbound/core.hpp"

#include <cmath>

#include "tsbound/errors.hpp"
#include "tsbound/fft.hpp"

namespace tsbound {

void WindowConfig::validate() const {
    if (past_len < 1 || horizon < 1)
        throw InvalidInputError("window config: past_len and horizon must be >= 1");
    if (stride < 1) throw InvalidInputError("window config: stride must be >= 1");
    if (window_length() < 2)
        throw InvalidInputError("window config: effective window length must be >= 2");
}

const char* window_mode_name(WindowMode mode) {
    switch (mode) {
        case WindowMode::PastOnly: return "past";
        case WindowMode::ForecastOnly: return "forecast";
        case WindowMode::PastPlusForecast: return "past+forecast";
    }
    return "?";
}

WindowMode parse_window_mode(const std::string& name) {
    if (name == "past") return WindowMode::PastOnly;
    if (name == "forecast") return WindowMode::ForecastOnly;
    if (name == "past+forecast" || name == "joint") return WindowMode::PastPlusForecast;
    throw InvalidInputError("unknown window mode '" + name +
                            "' (expected past, forecast or past+forecast)");
}

std::vector<double> zscore_normalize(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2) throw InvalidInputError("zscore_normalize: need at least 2 values");

    double mean = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) throw InvalidInputError("zscore_normalize: non-finite value");
        mean += v;
    }
    mean /= static_cast<double>(n);

    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);

    std::vector<double> out(n);
    if (var == 0.0) return out; // constant input -> all zeros
    const double sd = std::sqrt(var);
    for (std::size_t i = 0; i < n; ++i) out[i] = (values[i] - mean) / sd;
    return out;
}

TimeSeries zscore_normalize(const TimeSeries& series) {
    return TimeSeries{series.id, zscore_normalize(series.values), series.domain_tag};
}

std::vector<std::size_t> window_offsets(std::size_t series_len, const WindowConfig& config) {
    config.validate();
    const std::size_t len = config.window_length();
    if (series_len < len)
        throw TooShortError("series of length " + std::to_string(series_len) +
                                " is shorter than window length " + std::to_string(len),
                            len);
    std::vector<std::size_t> offsets;
    offsets.reserve((series_len - len) / config.stride + 1);
    for (std::size_t i = 0; i + len <= series_len; i += config.stride) offsets.push_back(i);
    return offsets;
}

std::size_t window_count(std::size_t series_len, const WindowConfig& config) {
    config.validate();
    const std::size_t len = config.window_length();
    if (series_len < len)
        throw TooShortError("series of length " + std::to_string(series_len) +
                                " is shorter than window length " + std::to_string(len),
                            len);
    return (series_len - len) / config.stride + 1;
}

std::vector<std::vector<double>> split_windows(const TimeSeries& series, const WindowConfig& config) {
    const auto offsets = window_offsets(series.length(), config);
    const std::size_t len = config.window_length();
    std::vector<std::vector<double>> windows;
    windows.reserve(offsets.size());
    for (std::size_t off : offsets)
        windows.emplace_back(series.values.begin() + static_cast<std::ptrdiff_t>(off),
                             series.values.begin() + static_cast<std::ptrdiff_t>(off + len));
    return windows;
}

AmplitudeSpectrum dft_amplitude(const std::vector<double>& window) {
    if (window.size() < 2) throw InvalidInputError("dft_amplitude: window length must be >= 2");
    for (double v : window)
        if (!std::isfinite(v)) throw InvalidInputError("dft_amplitude: non-finite value");
    return fft::amplitude(window);
}

} // namespace tsbound
