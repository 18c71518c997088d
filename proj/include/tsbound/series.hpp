#ifndef TSBOUND_SERIES_HPP
#define TSBOUND_SERIES_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace tsbound {

// A named univariate sequence of real observations. Values are validated to be
// finite at ingestion; ids are unique within a corpus.
struct TimeSeries {
    std::string id;
    std::vector<double> values;
    std::string domain_tag; // optional, e.g. "energy", "web"

    std::size_t length() const { return values.size(); }
};

enum class WindowMode {
    PastOnly,        // window length P
    ForecastOnly,    // window length F
    PastPlusForecast // window length P+F
};

// Sliding-window geometry. Defaults follow the input-96-predict-96 protocol
// with stride = F so consecutive windows align with consecutive forecast
// origins.
struct WindowConfig {
    std::size_t past_len = 96;
    std::size_t horizon = 96;
    std::size_t stride = 96;
    WindowMode mode = WindowMode::PastPlusForecast;

    std::size_t window_length() const {
        switch (mode) {
            case WindowMode::PastOnly: return past_len;
            case WindowMode::ForecastOnly: return horizon;
            case WindowMode::PastPlusForecast: return past_len + horizon;
        }
        return 0;
    }

    // Throws InvalidInputError when the geometry is unusable.
    void validate() const;
};

// Full two-sided amplitude spectrum, one bin per DFT frequency.
using AmplitudeSpectrum = std::vector<double>;

const char* window_mode_name(WindowMode mode);
WindowMode parse_window_mode(const std::string& name);

} // namespace tsbound

#endif
