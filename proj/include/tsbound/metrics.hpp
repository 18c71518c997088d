#ifndef TSBOUND_METRICS_HPP
#define TSBOUND_METRICS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "tsbound/series.hpp"

namespace tsbound::metrics {

// Window-wise pattern complexity: the total variance of the window amplitude
// spectra, (1/N) * sum_i ||A_i - Abar||^2. Zero iff all window spectra are
// identical.
struct ComplexityResult {
    double value = 0.0;
    std::size_t window_count = 0;
    WindowConfig config;
};

struct AcfHalfLife {
    std::size_t lag = 0;   // smallest tau with ACF(tau) <= ACF(1)/2
    bool censored = false; // true when no such tau exists within max_lag
};

// Requires at least 2 windows; throws InsufficientWindowsError otherwise.
ComplexityResult complexity(const TimeSeries& series, const WindowConfig& config);

// Mean squared distance between all pairs of window amplitude spectra drawn
// from x and y. Symmetric; divergence(x, x) == 2 * complexity(x).
double divergence(const TimeSeries& x, const TimeSeries& y, const WindowConfig& config);

// Augmented Dickey-Fuller t-statistic of the lagged-level coefficient in
//   dx_t = a + b*t + g*x_{t-1} + sum_i phi_i * dx_{t-i} + e_t.
// More negative means more stationary. Default lag order is the Schwert rule
// floor(12 * (n/100)^(1/4)).
double adf_statistic(const TimeSeries& series, std::optional<std::size_t> lag_order = {});

std::size_t schwert_lag(std::size_t n);

// Sample autocorrelations at lags 1..max_lag (full-sample mean, lag-0
// autocovariance denominator).
std::vector<double> acf(const TimeSeries& series, std::size_t max_lag);

// Smallest lag where the ACF drops to half its lag-1 value; censored at
// max_lag when it never does. Throws UndefinedHalfLifeError when ACF(1) <= 0.
AcfHalfLife acf_half_life(const TimeSeries& series, std::size_t max_lag);

// Forecastability in [0,1]: 1 - H(p)/log(L) where p is the normalized
// full-series amplitude spectrum. Near 1 for a pure tone, near 0 for noise.
double foreca(const TimeSeries& series);

} // namespace tsbound::metrics

#endif
