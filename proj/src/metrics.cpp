#include "tsbound/metrics.hpp"

#include <cmath>
#include <string>

#include "tsbound/core.hpp"
#include "tsbound/errors.hpp"
#include "tsbound/stats.hpp"

namespace tsbound::metrics {

namespace {

// Spectrum first/second moments over all windows of a series, accumulated in
// offset order.
struct SpectrumMoments {
    std::vector<double> sum;  // sum of A_i, per bin
    double sum_sq = 0.0;      // sum of ||A_i||^2
    std::size_t count = 0;
};

SpectrumMoments spectrum_moments(const TimeSeries& series, const WindowConfig& config) {
    const auto offsets = window_offsets(series.length(), config);
    const std::size_t len = config.window_length();
    SpectrumMoments m;
    m.sum.assign(len, 0.0);
    std::vector<double> window(len);
    for (std::size_t off : offsets) {
        for (std::size_t i = 0; i < len; ++i) window[i] = series.values[off + i];
        const auto amp = dft_amplitude(window);
        for (std::size_t i = 0; i < len; ++i) {
            m.sum[i] += amp[i];
            m.sum_sq += amp[i] * amp[i];
        }
    }
    m.count = offsets.size();
    return m;
}

} // namespace

ComplexityResult complexity(const TimeSeries& series, const WindowConfig& config) {
    const auto offsets = window_offsets(series.length(), config);
    const std::size_t n = offsets.size();
    if (n < 2)
        throw InsufficientWindowsError(
            "complexity: series '" + series.id + "' admits only " + std::to_string(n) +
                " window(s); at least 2 are required",
            2);

    const std::size_t len = config.window_length();
    std::vector<AmplitudeSpectrum> spectra;
    spectra.reserve(n);
    std::vector<double> window(len);
    for (std::size_t off : offsets) {
        for (std::size_t i = 0; i < len; ++i) window[i] = series.values[off + i];
        spectra.push_back(dft_amplitude(window));
    }

    std::vector<double> mean(len, 0.0);
    for (const auto& a : spectra)
        for (std::size_t i = 0; i < len; ++i) mean[i] += a[i];
    for (double& v : mean) v /= static_cast<double>(n);

    double total = 0.0;
    for (const auto& a : spectra) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
            const double d = a[i] - mean[i];
            d2 += d * d;
        }
        total += d2;
    }

    ComplexityResult res;
    res.value = total / static_cast<double>(n);
    res.window_count = n;
    res.config = config;
    return res;
}

double divergence(const TimeSeries& x, const TimeSeries& y, const WindowConfig& config) {
    // (1/NM) sum_ij ||A_i - B_j||^2
    //   = (1/N) sum_i ||A_i||^2 + (1/M) sum_j ||B_j||^2 - (2/NM) <sum A, sum B>
    const auto mx = spectrum_moments(x, config);
    const auto my = spectrum_moments(y, config);
    const double n = static_cast<double>(mx.count);
    const double m = static_cast<double>(my.count);
    double cross = 0.0;
    for (std::size_t i = 0; i < mx.sum.size(); ++i) cross += mx.sum[i] * my.sum[i];
    const double value = mx.sum_sq / n + my.sum_sq / m - 2.0 * cross / (n * m);
    return value < 0.0 ? 0.0 : value;
}

std::size_t schwert_lag(std::size_t n) {
    return static_cast<std::size_t>(
        std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

double adf_statistic(const TimeSeries& series, std::optional<std::size_t> lag_order) {
    const std::size_t n = series.length();
    const std::size_t p = lag_order.value_or(schwert_lag(n));

    // Regression rows t = p+1 .. n-1; regressors x_{t-1}, dx_{t-1}..dx_{t-p},
    // then intercept and trend added by ols().
    const std::size_t ncoef = p + 3; // level + p lagged diffs + const + trend
    if (n < p + 2 || n - p - 1 <= ncoef)
        throw InvalidInputError("adf_statistic: series '" + series.id + "' too short (" +
                                std::to_string(n) + " points) for lag order " +
                                std::to_string(p));

    const std::size_t rows = n - p - 1;
    std::vector<std::vector<double>> design(rows);
    std::vector<double> response(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = p + 1 + r;
        response[r] = series.values[t] - series.values[t - 1];
        auto& row = design[r];
        row.resize(p + 2);
        row[0] = series.values[t - 1];
        for (std::size_t i = 1; i <= p; ++i)
            row[i] = series.values[t - i] - series.values[t - i - 1];
        row[p + 1] = static_cast<double>(t); // linear trend
    }

    stats::RegressionFit fit;
    try {
        fit = stats::ols(design, response, true);
    } catch (const DegenerateRegressionError& e) {
        throw DegenerateRegressionError("adf_statistic: exactly collinear regressors for series '" +
                                            series.id + "' (" + e.what() + ")",
                                        e.column);
    }
    // coefficients: [intercept, level, dx lags..., trend]
    const double gamma = fit.coefficients[1];
    const double se = fit.std_errors[1];
    if (!(se > 0.0))
        throw DegenerateError("adf_statistic: zero standard error for series '" + series.id + "'");
    return gamma / se;
}

std::vector<double> acf(const TimeSeries& series, std::size_t max_lag) {
    const std::size_t n = series.length();
    if (max_lag < 1) throw InvalidInputError("acf: max_lag must be >= 1");
    if (max_lag >= n) throw InvalidInputError("acf: max_lag must be smaller than series length");

    double mean = 0.0;
    for (double v : series.values) mean += v;
    mean /= static_cast<double>(n);

    double c0 = 0.0;
    for (double v : series.values) c0 += (v - mean) * (v - mean);
    if (c0 == 0.0)
        throw DegenerateError("acf: zero-variance series '" + series.id + "'");

    std::vector<double> out(max_lag);
    for (std::size_t tau = 1; tau <= max_lag; ++tau) {
        double c = 0.0;
        for (std::size_t t = tau; t < n; ++t)
            c += (series.values[t] - mean) * (series.values[t - tau] - mean);
        out[tau - 1] = c / c0;
    }
    return out;
}

AcfHalfLife acf_half_life(const TimeSeries& series, std::size_t max_lag) {
    const auto r = acf(series, max_lag);
    if (!(r[0] > 0.0))
        throw UndefinedHalfLifeError("acf_half_life: ACF(1) <= 0 for series '" + series.id + "'");
    const double half = r[0] / 2.0;
    for (std::size_t tau = 1; tau <= max_lag; ++tau)
        if (r[tau - 1] <= half) return {tau, false};
    return {max_lag, true};
}

double foreca(const TimeSeries& series) {
    const std::size_t n = series.length();
    if (n < 4) throw InvalidInputError("foreca: need at least 4 points");

    const auto amp = dft_amplitude(series.values);
    double total = 0.0;
    for (double a : amp) total += a;
    if (total == 0.0)
        throw DegenerateError("foreca: degenerate spectrum for constant series '" + series.id + "'");

    // Guard the constant-series case where all amplitude sits in the DC bin:
    // entropy would be 0 and forecastability spuriously 1.
    double off_dc = 0.0;
    for (std::size_t k = 1; k < amp.size(); ++k) off_dc += amp[k];
    if (off_dc == 0.0)
        throw DegenerateError("foreca: constant series '" + series.id + "'");

    double entropy = 0.0;
    for (double a : amp) {
        const double pk = a / total;
        if (pk > 0.0) entropy -= pk * std::log(pk);
    }
    const double max_entropy = std::log(static_cast<double>(amp.size()));
    double value = 1.0 - entropy / max_entropy;
    if (value < 0.0) value = 0.0;
    if (value > 1.0) value = 1.0;
    return value;
}

} // namespace tsbound::metrics
